#include "lgsim/batch.hpp"

#include <algorithm>
#include <cmath>

#include "lgsim/errors.hpp"
#include "lgsim/parallel.hpp"

namespace lgsim {

std::vector<double> ground_probability_series(const DerivedRates& rates,
                                              double rabi,
                                              std::span<const double> ts) {
    std::vector<double> out(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        out[i] = ground_probability(rates, rabi, ts[i]);
    return out;
}

std::vector<double> lg_parameter_series(const DerivedRates& rates, double rabi,
                                        std::span<const double> ts,
                                        LGWhich which, double xi, Exec exec) {
    std::vector<double> out(ts.size());
    detail::parallel_for(static_cast<long>(ts.size()), exec == Exec::Parallel,
                         [&](long i) {
                             out[i] = lg_parameter(rates, rabi, ts[i], which, xi);
                         });
    return out;
}

namespace {

struct SetComparison {
    double max_err = 0.0;
    double worst_t = 0.0;
    StepStats stats;
};

SetComparison compare_one(const SystemParams& p, std::span<const double> ts,
                          const IntegratorOptions& opts) {
    const DerivedRates rates = derive_rates(p);
    SetComparison out;
    const Trajectory traj =
        integrate(ground_density(), p, ts.empty() ? 0.0 : ts.back(), ts, opts);
    out.stats = traj.stats;
    for (const auto& sample : traj.samples) {
        const double pg_num = ground_population(sample.rho);
        const double pg_cf = ground_probability(rates, p.rabi, sample.t);
        const double err = std::abs(pg_num - pg_cf);
        if (err > out.max_err) {
            out.max_err = err;
            out.worst_t = sample.t;
        }
    }
    return out;
}

void merge_stats(StepStats& into, const StepStats& from) {
    into.accepted += from.accepted;
    into.rejected += from.rejected;
    into.rhs_evals += from.rhs_evals;
    into.max_trace_error = std::max(into.max_trace_error, from.max_trace_error);
    into.max_hermiticity_error =
        std::max(into.max_hermiticity_error, from.max_hermiticity_error);
    into.min_eigenvalue = std::min(into.min_eigenvalue, from.min_eigenvalue);
}

}  // namespace

OracleComparison compare_oracle_analytic(std::span<const SystemParams> sets,
                                         std::span<const double> ts,
                                         const IntegratorOptions& opts,
                                         Exec exec) {
    std::vector<SetComparison> per_set(sets.size());
    detail::parallel_for(static_cast<long>(sets.size()),
                         exec == Exec::Parallel, [&](long i) {
                             per_set[i] = compare_one(sets[i], ts, opts);
                         });
    // Single-owner reduction keeps the result independent of scheduling.
    OracleComparison out;
    out.per_set_err.resize(sets.size());
    for (std::size_t i = 0; i < per_set.size(); ++i) {
        out.per_set_err[i] = per_set[i].max_err;
        merge_stats(out.stats, per_set[i].stats);
        if (per_set[i].max_err > out.max_abs_err) {
            out.max_abs_err = per_set[i].max_err;
            out.worst_set = i;
            out.worst_t = per_set[i].worst_t;
        }
    }
    return out;
}

std::vector<ViolationReport> sweep_violation(std::span<const SweepPoint> points,
                                             double t_lo, double t_hi,
                                             LGWhich which,
                                             const ScanOptions& scan,
                                             Exec exec) {
    std::vector<ViolationReport> out(points.size());
    // Parallelism lives at the sweep level here; each scan runs serially.
    ScanOptions inner = scan;
    inner.parallel = false;
    detail::parallel_for(
        static_cast<long>(points.size()), exec == Exec::Parallel, [&](long i) {
            const DerivedRates rates = derive_rates(points[i].params);
            ScanOptions o = inner;
            o.xi = points[i].xi;
            out[i] = scan_violation(rates, points[i].params.rabi, t_lo, t_hi,
                                    which, o);
        });
    return out;
}

}  // namespace lgsim
