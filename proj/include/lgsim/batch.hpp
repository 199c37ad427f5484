#ifndef LGSIM_BATCH_HPP
#define LGSIM_BATCH_HPP

// Data-parallel kernels over parameter sets and time grids. Every kernel
// comes in an OpenMP flavor and a plain-loop serial reference; both fill
// output slots by index, so their results are bitwise identical (tested).

#include <span>
#include <vector>

#include "lgsim/lgti.hpp"
#include "lgsim/lindblad.hpp"
#include "lgsim/params.hpp"

namespace lgsim {

enum class Exec { Serial, Parallel };

// Closed-form ground-state survival probability on a time grid.
std::vector<double> ground_probability_series(const DerivedRates& rates,
                                              double rabi,
                                              std::span<const double> ts);

// K(t) samples for one parameter set (the scan_violation sampling kernel).
std::vector<double> lg_parameter_series(const DerivedRates& rates, double rabi,
                                        std::span<const double> ts,
                                        LGWhich which, double xi, Exec exec);

// Closed form vs density-matrix integration across many parameter sets.
struct OracleComparison {
    double max_abs_err = 0.0;   // max |p_g closed form - p_g integrated|
    std::size_t worst_set = 0;
    double worst_t = 0.0;
    StepStats stats;            // aggregated over all trajectories
    std::vector<double> per_set_err;
};

OracleComparison compare_oracle_analytic(std::span<const SystemParams> sets,
                                         std::span<const double> ts,
                                         const IntegratorOptions& opts,
                                         Exec exec);

// One point of a parameter sweep: the physical parameters plus the
// measurement sharpness to scan at.
struct SweepPoint {
    SystemParams params;
    double xi = 1.0;
};

// Violation scans across many sweep points (sweep kernel). Output order
// matches input order regardless of scheduling.
std::vector<ViolationReport> sweep_violation(std::span<const SweepPoint> points,
                                             double t_lo, double t_hi,
                                             LGWhich which,
                                             const ScanOptions& scan,
                                             Exec exec);

}  // namespace lgsim

#endif
