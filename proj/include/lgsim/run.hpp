#ifndef LGSIM_RUN_HPP
#define LGSIM_RUN_HPP

// The four CLI entry points as library functions, so the command-line
// binary stays a thin argument-parsing shell and everything here is
// directly testable. All of them throw (InvalidParams / PhysicsError /
// IoError); the binary maps exceptions to exit codes 1 / 2 / 3.

#include <string>
#include <vector>

#include "lgsim/batch.hpp"
#include "lgsim/lgti.hpp"
#include "lgsim/lindblad.hpp"
#include "lgsim/params.hpp"

namespace lgsim {

enum class OutFormat { Csv, Json };

struct SweepSpec {
    std::string param;           // ratio_r | beta | squeeze_s | xi; empty = none
    std::vector<double> values;  // explicit list or expanded linspace

    bool active() const { return !param.empty(); }
};

struct RunConfig {
    SystemParams base;
    SweepSpec sweep;
    double xi = 1.0;
    double t_max = 25.0;  // in units of 1/rabi
    int n_points = 2001;
    IntegratorOptions integrator;
    std::string out_path = "lgsim_out.csv";
    OutFormat format = OutFormat::Csv;
    Exec exec = Exec::Parallel;
    LGWhich which = LGWhich::KPlus;  // scanned parameter in sweep mode
};

// Applies one sweep value to a copy of the base parameters (ratio_r sets
// gamma0 = value * rabi; beta clears the zero-temperature flag; xi is
// returned through the SweepPoint). Throws InvalidParams for values
// outside the axis domain.
SweepPoint apply_sweep_value(const RunConfig& cfg, double value);

// Time series of closed-form and integrated dynamics (t, p_g closed form,
// p_g integrated, coherence); raises PhysicsError if the two routes
// disagree beyond max(1e-8, 10 * rtol). With an active sweep the table
// gains a leading column for the swept value.
void run_dynamics(const RunConfig& cfg);

// Leggett-Garg time series (t, k_plus, k_minus, f, p_g, coherence) plus a
// violation-report JSON sidecar ("<out>.report.json").
void run_lgti(const RunConfig& cfg);

// Per-sweep-value violation summary rows (value, status, k_max, t_at_max,
// total_violation_time, regime). Rows for out-of-domain values carry the
// error instead of numbers; only all rows failing is fatal.
void run_sweep(const RunConfig& cfg);

// Preset parameter studies named fig2..fig7; emits per-curve series CSVs
// and report sidecars under cfg.out_path treated as a directory.
void run_figure(const RunConfig& cfg, const std::string& figure_id);

const std::vector<std::string>& known_figures();

}  // namespace lgsim

#endif
