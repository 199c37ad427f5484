#include "lgsim/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <sstream>

#include "lgsim/density.hpp"
#include "lgsim/errors.hpp"
#include "lgsim/io.hpp"

namespace lgsim {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    out.back() = hi;
    return out;
}

std::vector<double> time_grid(const RunConfig& cfg) {
    if (cfg.n_points < 2) throw InvalidParams("need at least 2 time points");
    if (!(cfg.t_max > 0.0)) throw InvalidParams("t_max must be > 0");
    return linspace(0.0, cfg.t_max, cfg.n_points);
}

// Validation times for the construction-time propagator cross-check.
std::vector<double> validation_times(double t_max) {
    std::vector<double> ts;
    for (double t : {1e-3, 0.1, 1.0, 5.0, 20.0})
        if (t < t_max) ts.push_back(t);
    ts.push_back(t_max);
    return ts;
}

std::string report_sidecar_path(std::string out) {
    for (const char* ext : {".csv", ".json"}) {
        if (out.size() > std::strlen(ext) &&
            out.compare(out.size() - std::strlen(ext), std::string::npos,
                        ext) == 0) {
            out.resize(out.size() - std::strlen(ext));
            break;
        }
    }
    return out + ".report.json";
}

void write_table(const RunConfig& cfg, const CsvTable& table,
                 const std::string& path) {
    if (cfg.format == OutFormat::Csv)
        write_file(path, to_csv(table));
    else
        write_file(path, to_json_rows(table).dump(2) + "\n");
}

std::string format_value(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

}  // namespace

SweepPoint apply_sweep_value(const RunConfig& cfg, double value) {
    SweepPoint point{cfg.base, cfg.xi};
    const std::string& param = cfg.sweep.param;
    if (param == "ratio_r") {
        if (!(value >= 0.0))
            throw InvalidParams("sweep ratio_r: value must be >= 0");
        point.params.gamma0 = value * cfg.base.rabi;
    } else if (param == "beta") {
        if (!(value > 0.0))
            throw InvalidParams("sweep beta: value must be > 0");
        point.params.beta = value;
        point.params.zero_temperature = false;
    } else if (param == "squeeze_s") {
        if (!(value >= 0.0))
            throw InvalidParams("sweep squeeze_s: value must be >= 0");
        point.params.squeeze_s = value;
    } else if (param == "xi") {
        if (!(value > 0.0 && value <= 1.0))
            throw InvalidParams("sweep xi: value must be in (0, 1]");
        point.xi = value;
    } else {
        throw InvalidParams("unknown sweep parameter '" + param +
                            "' (expected ratio_r, beta, squeeze_s or xi)");
    }
    point.params.validate();
    return point;
}

namespace {

std::vector<SweepPoint> resolve_points(const RunConfig& cfg) {
    if (!cfg.sweep.active()) return {SweepPoint{cfg.base, cfg.xi}};
    if (cfg.sweep.values.empty())
        return {SweepPoint{cfg.base, cfg.xi}};  // empty list = single run
    std::vector<SweepPoint> points;
    points.reserve(cfg.sweep.values.size());
    for (double v : cfg.sweep.values) points.push_back(apply_sweep_value(cfg, v));
    return points;
}

void add_base_metadata(CsvTable& table, const RunConfig& cfg,
                       const char* mode) {
    table.metadata.emplace_back("mode", mode);
    table.metadata.emplace_back("omega0", format_value(cfg.base.omega0));
    table.metadata.emplace_back("rabi", format_value(cfg.base.rabi));
    table.metadata.emplace_back(
        "beta", cfg.base.zero_temperature ? "inf" : format_value(cfg.base.beta));
    table.metadata.emplace_back("gamma0", format_value(cfg.base.gamma0));
    table.metadata.emplace_back("squeeze_s", format_value(cfg.base.squeeze_s));
    table.metadata.emplace_back("time_unit", "1/rabi");
    if (cfg.sweep.active()) table.metadata.emplace_back("sweep", cfg.sweep.param);
}

double sweep_value_of(const RunConfig& cfg, const SweepPoint& point,
                      std::size_t index) {
    if (!cfg.sweep.active() || cfg.sweep.values.empty()) return 0.0;
    return cfg.sweep.values[index];
}

}  // namespace

void run_dynamics(const RunConfig& cfg) {
    const std::vector<double> ts = time_grid(cfg);
    const std::vector<SweepPoint> points = resolve_points(cfg);
    const double mismatch_tol = std::max(1e-8, 10.0 * cfg.integrator.rtol);

    CsvTable table;
    add_base_metadata(table, cfg, "dynamics");
    const bool swept = cfg.sweep.active() && !cfg.sweep.values.empty();
    if (swept) table.columns.push_back(cfg.sweep.param);
    table.columns.insert(table.columns.end(),
                         {"t", "p_g_analytic", "p_g_oracle", "coherence"});

    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const SystemParams& p = points[pi].params;
        const DerivedRates rates = derive_rates(p);
        validate_propagator(rates, p.rabi, validation_times(cfg.t_max));
        {
            std::ostringstream tag;
            tag << "curve " << pi;
            table.metadata.emplace_back(
                tag.str(), (swept ? cfg.sweep.param + "=" +
                                        format_value(sweep_value_of(cfg, points[pi], pi)) +
                                        " "
                                  : std::string()) +
                               "regime=" +
                               to_string(classify_regime(rates, p.rabi)));
        }

        const Trajectory traj =
            integrate(ground_density(), p, cfg.t_max, ts, cfg.integrator);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const BlochVector v =
                evolve(BlochVector::ground(), rates, p.rabi, ts[i]);
            const double pg_cf = 0.5 * (1.0 - v.v3);
            const double pg_num = ground_population(traj.samples[i].rho);
            if (std::abs(pg_cf - pg_num) > mismatch_tol) {
                std::ostringstream msg;
                msg << "closed form and integrated dynamics disagree by "
                    << std::abs(pg_cf - pg_num) << " at t = " << ts[i];
                throw PhysicsError(msg.str());
            }
            std::vector<double> row;
            if (swept) row.push_back(sweep_value_of(cfg, points[pi], pi));
            row.insert(row.end(), {ts[i], pg_cf, pg_num, coherence(v)});
            table.rows.push_back(std::move(row));
        }
    }
    write_table(cfg, table, cfg.out_path);
}

namespace {

nlohmann::json point_report(const RunConfig& cfg, const SweepPoint& point,
                            const DerivedRates& rates) {
    ScanOptions scan;
    scan.n_samples = cfg.n_points;
    scan.xi = point.xi;
    scan.parallel = cfg.exec == Exec::Parallel;
    const double rabi = point.params.rabi;
    nlohmann::json j;
    j["params"] = to_json(point.params);
    j["xi"] = point.xi;
    j["regime"] = to_string(classify_regime(rates, rabi));
    j["k_plus"] = to_json(
        scan_violation(rates, rabi, 0.0, cfg.t_max, LGWhich::KPlus, scan));
    j["k_minus"] = to_json(
        scan_violation(rates, rabi, 0.0, cfg.t_max, LGWhich::KMinus, scan));
    return j;
}

}  // namespace

void run_lgti(const RunConfig& cfg) {
    const std::vector<double> ts = time_grid(cfg);
    const std::vector<SweepPoint> points = resolve_points(cfg);

    CsvTable table;
    add_base_metadata(table, cfg, "lgti");
    const bool swept = cfg.sweep.active() && !cfg.sweep.values.empty();
    if (swept) table.columns.push_back(cfg.sweep.param);
    table.columns.insert(table.columns.end(),
                         {"t", "k_plus", "k_minus", "f", "p_g", "coherence"});

    nlohmann::json reports = nlohmann::json::array();
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const SystemParams& p = points[pi].params;
        const double xi = points[pi].xi;
        const DerivedRates rates = derive_rates(p);
        validate_propagator(rates, p.rabi, validation_times(cfg.t_max));
        for (double t : ts) {
            const KPair k = k_pm(rates, p.rabi, t);
            const BlochVector v = evolve(BlochVector::ground(), rates, p.rabi, t);
            std::vector<double> row;
            if (swept) row.push_back(sweep_value_of(cfg, points[pi], pi));
            row.insert(row.end(),
                       {t, xi == 1.0 ? k.k_plus : apply_weak_measurement(k.k_plus, xi),
                        xi == 1.0 ? k.k_minus : apply_weak_measurement(k.k_minus, xi),
                        f_function(rates, p.rabi, t), 0.5 * (1.0 - v.v3),
                        coherence(v)});
            table.rows.push_back(std::move(row));
        }
        reports.push_back(point_report(cfg, points[pi], rates));
    }
    write_table(cfg, table, cfg.out_path);
    write_file(report_sidecar_path(cfg.out_path), reports.dump(2) + "\n");
}

void run_sweep(const RunConfig& cfg) {
    if (!cfg.sweep.active())
        throw InvalidParams("sweep mode requires a sweep parameter");
    if (cfg.sweep.values.empty())
        throw InvalidParams("sweep mode requires at least one value");

    struct Row {
        double value;
        std::string status;
        ViolationReport report;
        Regime regime;
    };
    std::vector<Row> rows;
    std::vector<SweepPoint> ok_points;
    std::vector<std::size_t> ok_index;
    for (std::size_t i = 0; i < cfg.sweep.values.size(); ++i) {
        Row row;
        row.value = cfg.sweep.values[i];
        try {
            const SweepPoint point = apply_sweep_value(cfg, row.value);
            ok_points.push_back(point);
            ok_index.push_back(i);
            row.status = "ok";
        } catch (const InvalidParams& e) {
            row.status = e.what();
            std::replace(row.status.begin(), row.status.end(), ',', ';');
        }
        rows.push_back(std::move(row));
    }
    if (ok_points.empty())
        throw InvalidParams("sweep: every value failed validation");

    ScanOptions scan;
    scan.n_samples = cfg.n_points;
    scan.parallel = false;  // parallelism is across sweep points
    const std::vector<ViolationReport> reports = sweep_violation(
        ok_points, 0.0, cfg.t_max, cfg.which, scan, cfg.exec);
    for (std::size_t k = 0; k < ok_points.size(); ++k) {
        rows[ok_index[k]].report = reports[k];
        rows[ok_index[k]].regime = classify_regime(
            derive_rates(ok_points[k].params), ok_points[k].params.rabi);
    }

    std::string out;
    out += "# mode: sweep\n# parameter: " + cfg.sweep.param +
           "\n# which: " + to_string(cfg.which) + "\n";
    out += "value,status,k_max,t_at_max,total_violation_time,regime\n";
    for (const auto& row : rows) {
        out += format_sci(row.value) + "," + row.status;
        if (row.status == "ok") {
            out += "," + format_sci(row.report.k_max) + "," +
                   format_sci(row.report.t_at_max) + "," +
                   format_sci(row.report.total_violation_time) + "," +
                   to_string(row.regime);
        } else {
            out += ",,,,";
        }
        out += "\n";
    }
    write_file(cfg.out_path, out);
}

const std::vector<std::string>& known_figures() {
    static const std::vector<std::string> ids = {"fig2", "fig3", "fig4",
                                                 "fig5", "fig6", "fig7"};
    return ids;
}

namespace {

RunConfig figure_base(const RunConfig& cfg) {
    RunConfig out = cfg;
    out.base = SystemParams{};  // omega0 = 0.5, rabi = 1, beta = 10, s = 0
    out.base.omega0 = 0.5;
    out.base.rabi = 1.0;
    out.base.beta = 10.0;
    out.base.zero_temperature = false;
    out.base.gamma0 = 0.0;
    out.base.squeeze_s = 0.0;
    out.sweep = {};
    out.xi = 1.0;
    return out;
}

}  // namespace

void run_figure(const RunConfig& cfg, const std::string& figure_id) {
    const auto& ids = known_figures();
    if (std::find(ids.begin(), ids.end(), figure_id) == ids.end())
        throw InvalidParams("unknown figure id '" + figure_id +
                            "' (expected fig2..fig7)");

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_path, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.out_path);
    const auto path_of = [&](const std::string& name) {
        return (fs::path(cfg.out_path) / name).string();
    };

    RunConfig preset = figure_base(cfg);
    if (figure_id == "fig2") {
        // Ground-state survival for no, weak and strong damping.
        preset.sweep = {"ratio_r", {0.0, 0.05, 5.0}};
        preset.out_path = path_of("fig2_pg.csv");
        preset.format = OutFormat::Csv;
        run_dynamics(preset);
        return;
    }
    if (figure_id == "fig3") {
        preset.sweep = {"ratio_r", {0.0, 0.05, 5.0}};
        preset.out_path = path_of("fig3_lg.csv");
        preset.format = OutFormat::Csv;
        run_lgti(preset);
        return;
    }
    if (figure_id == "fig4") {
        // Complementary K+ / K- deep in the strong-driving regime, with the
        // pure-cosine limit alongside the exact curves.
        preset.base.gamma0 = 0.005;
        const std::vector<double> ts = time_grid(preset);
        const DerivedRates rates = derive_rates(preset.base);
        validate_propagator(rates, preset.base.rabi,
                            validation_times(preset.t_max));
        CsvTable table;
        add_base_metadata(table, preset, "figure");
        table.metadata.emplace_back("figure", figure_id);
        table.columns = {"t",           "k_plus",        "k_minus",
                         "k_plus_limit", "k_minus_limit", "p_g"};
        for (double t : ts) {
            const KPair k = k_pm(rates, preset.base.rabi, t);
            const KPair lim = k_pm_strong_driving(preset.base.rabi, t);
            table.rows.push_back({t, k.k_plus, k.k_minus, lim.k_plus,
                                  lim.k_minus,
                                  ground_probability(rates, preset.base.rabi, t)});
        }
        write_file(path_of("fig4_lg.csv"), to_csv(table));
        nlohmann::json reports = nlohmann::json::array();
        reports.push_back(point_report(preset, SweepPoint{preset.base, 1.0}, rates));
        write_file(path_of("fig4_lg.report.json"), reports.dump(2) + "\n");
        return;
    }
    if (figure_id == "fig5") {
        preset.base.gamma0 = 0.005;
        preset.sweep = {"beta", {10.0, 1.0, 1e-3}};
        preset.out_path = path_of("fig5_lg.csv");
        preset.format = OutFormat::Csv;
        run_lgti(preset);
        return;
    }
    if (figure_id == "fig6") {
        preset.base.beta = 100.0;
        preset.base.gamma0 = 0.05;
        preset.sweep = {"squeeze_s", {0.0, 1.0, 3.5}};
        preset.out_path = path_of("fig6_lg.csv");
        preset.format = OutFormat::Csv;
        run_lgti(preset);
        return;
    }
    // fig7: K+ against time and measurement sharpness.
    preset.base.beta = 5.0;
    const std::vector<double> ts = time_grid(preset);
    const std::vector<double> xis = linspace(0.1, 1.0, 10);
    nlohmann::json reports = nlohmann::json::array();
    int curve = 0;
    for (double ratio : {0.0, 0.05}) {
        RunConfig c = preset;
        c.base.gamma0 = ratio * c.base.rabi;
        const DerivedRates rates = derive_rates(c.base);
        validate_propagator(rates, c.base.rabi, validation_times(c.t_max));
        CsvTable table;
        add_base_metadata(table, c, "figure");
        table.metadata.emplace_back("figure", figure_id);
        table.metadata.emplace_back("ratio_r", format_value(ratio));
        table.columns = {"t", "xi", "k_plus"};
        for (double xi : xis)
            for (double t : ts)
                table.rows.push_back(
                    {t, xi,
                     apply_weak_measurement(k_pm(rates, c.base.rabi, t).k_plus,
                                            xi)});
        std::ostringstream name;
        name << "fig7_surface" << curve << ".csv";
        write_file(path_of(name.str()), to_csv(table));
        reports.push_back(point_report(c, SweepPoint{c.base, 1.0}, rates));
        ++curve;
    }
    write_file(path_of("fig7_lg.report.json"), reports.dump(2) + "\n");
}

}  // namespace lgsim
