// lgsim: dynamics and Leggett-Garg analysis of a driven two-level atom in
// a squeezed thermal reservoir.
//
//   lgsim dynamics --out pg.csv --gamma0 0.05
//   lgsim lgti --out lg.csv --t-max 25 --points 2001
//   lgsim sweep --param xi --linspace 0.1:1.0:10 --out sweep.csv
//   lgsim figure fig3 --out figdata/
//
// Exit codes: 0 success, 1 configuration error, 2 physics/invariant
// failure, 3 I/O error.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lgsim/errors.hpp"
#include "lgsim/run.hpp"

namespace {

// "lo:hi:n" -> n evenly spaced values.
std::vector<double> parse_linspace(const std::string& spec) {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
        throw lgsim::InvalidParams("bad linspace '" + spec +
                                   "' (expected lo:hi:n)");
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    out.back() = hi;
    return out;
}

void add_common_options(CLI::App* cmd, lgsim::RunConfig& cfg,
                        std::string& linspace, bool with_sweep) {
    cmd->add_option("--rabi", cfg.base.rabi, "Rabi frequency (> 0)");
    cmd->add_option("--gamma0", cfg.base.gamma0, "spontaneous emission rate");
    cmd->add_option("--beta", cfg.base.beta, "inverse temperature");
    cmd->add_option("--omega0", cfg.base.omega0, "transition frequency");
    cmd->add_option("--squeeze-s", cfg.base.squeeze_s, "squeezing magnitude");
    cmd->add_flag("--zero-temperature", cfg.base.zero_temperature,
                  "zero-temperature reservoir (ignores --beta)");
    cmd->add_option("--xi", cfg.xi, "measurement sharpness in (0, 1]");
    cmd->add_option("--t-max", cfg.t_max, "time-grid end, units of 1/rabi");
    cmd->add_option("--points", cfg.n_points, "number of time-grid points");
    cmd->add_option("--rtol", cfg.integrator.rtol, "integrator rtol");
    cmd->add_option("--atol", cfg.integrator.atol, "integrator atol");
    cmd->add_option("--out", cfg.out_path, "output path");
    cmd->add_option("--format", [&cfg](const std::vector<std::string>& v) {
        if (v.front() == "csv") {
            cfg.format = lgsim::OutFormat::Csv;
            return true;
        }
        if (v.front() == "json") {
            cfg.format = lgsim::OutFormat::Json;
            return true;
        }
        return false;
    }, "output format: csv|json")->expected(1);
    cmd->add_flag("--serial", [&cfg](std::int64_t) {
        cfg.exec = lgsim::Exec::Serial;
    }, "disable the worker pool");
    if (with_sweep) {
        cmd->add_option("--param", cfg.sweep.param,
                        "sweep parameter: ratio_r|beta|squeeze_s|xi");
        cmd->add_option("--values", cfg.sweep.values,
                        "explicit sweep values")->delimiter(',');
        cmd->add_option("--linspace", linspace, "sweep values as lo:hi:n");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"driven two-level atom in a squeezed thermal reservoir: "
                 "dynamics and Leggett-Garg-type inequality analysis"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file");
    app.fallthrough();

    lgsim::RunConfig cfg;
    std::string linspace;
    std::string figure_id;
    std::string which = "k_plus";

    CLI::App* dynamics =
        app.add_subcommand("dynamics", "closed-form vs integrated p_g series");
    add_common_options(dynamics, cfg, linspace, true);

    CLI::App* lgti = app.add_subcommand(
        "lgti", "K+/K-/F/p_g/coherence series plus violation reports");
    add_common_options(lgti, cfg, linspace, true);

    CLI::App* sweep =
        app.add_subcommand("sweep", "violation summary across a parameter axis");
    add_common_options(sweep, cfg, linspace, true);
    sweep->add_option("--which", which, "k_plus|k_minus|k3");

    CLI::App* figure =
        app.add_subcommand("figure", "preset parameter studies fig2..fig7");
    figure->add_option("id", figure_id, "figure id")->required();
    add_common_options(figure, cfg, linspace, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        if (!linspace.empty()) {
            if (!cfg.sweep.values.empty())
                throw lgsim::InvalidParams(
                    "--values and --linspace are mutually exclusive");
            cfg.sweep.values = parse_linspace(linspace);
        }
        if (which == "k_plus")
            cfg.which = lgsim::LGWhich::KPlus;
        else if (which == "k_minus")
            cfg.which = lgsim::LGWhich::KMinus;
        else if (which == "k3")
            cfg.which = lgsim::LGWhich::K3;
        else
            throw lgsim::InvalidParams("unknown --which '" + which + "'");

        if (dynamics->parsed())
            lgsim::run_dynamics(cfg);
        else if (lgti->parsed())
            lgsim::run_lgti(cfg);
        else if (sweep->parsed())
            lgsim::run_sweep(cfg);
        else if (figure->parsed())
            lgsim::run_figure(cfg, figure_id);
    } catch (const lgsim::InvalidParams& e) {
        std::fprintf(stderr, "lgsim: %s\n", e.what());
        return 1;
    } catch (const lgsim::PhysicsError& e) {
        std::fprintf(stderr, "lgsim: %s\n", e.what());
        return 2;
    } catch (const lgsim::IoError& e) {
        std::fprintf(stderr, "lgsim: %s\n", e.what());
        return 3;
    }
    return 0;
}
