#include "lgsim/lgti.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>

#include "lgsim/density.hpp"
#include "lgsim/errors.hpp"
#include "lgsim/parallel.hpp"

namespace lgsim {

double correlation_ground_prep(const DerivedRates& rates, double rabi,
                               double t) {
    return 2.0 * ground_probability(rates, rabi, t) - 1.0;
}

double two_time_correlation_bloch(const BlochVector& state,
                                  const DerivedRates& rates, double rabi,
                                  double lag) {
    // Outcome +1 collapses to |g>, outcome -1 to |e>; <M> = -v3.
    const double p_plus = 0.5 * (1.0 - state.v3);
    const double p_minus = 0.5 * (1.0 + state.v3);
    double corr = 0.0;
    if (p_plus > 0.0) {
        const BlochVector v = evolve(BlochVector::ground(), rates, rabi, lag);
        corr += p_plus * (-v.v3);
    }
    if (p_minus > 0.0) {
        const BlochVector v = evolve(BlochVector::excited(), rates, rabi, lag);
        corr -= p_minus * (-v.v3);
    }
    return corr;
}

double k3(const DerivedRates& rates, double rabi, double t01, double t12,
          const BlochVector& prep) {
    if (t01 < 0.0 || t12 < 0.0)
        throw InvalidParams("k3: measurement gaps must be >= 0");
    const double c01 = two_time_correlation_bloch(prep, rates, rabi, t01);
    const BlochVector at_t1 = evolve(prep, rates, rabi, t01);
    const double c12 = two_time_correlation_bloch(at_t1, rates, rabi, t12);
    const double c02 =
        two_time_correlation_bloch(prep, rates, rabi, t01 + t12);
    return c01 + c12 - c02;
}

LGCoefficients lg_coefficients(const DerivedRates& r, double rabi) {
    const double g = r.gamma;
    const double g0 = r.gamma0;
    const double g0m = g0 * r.m_param;
    const double om2 = rabi * rabi;
    const double denom = g * g - 2.0 * g * g0m + 2.0 * om2;
    LGCoefficients c;
    c.a_coef = 1.0 / (4.0 * denom);
    c.b_coef = 4.0 * (g + g0) * (g - 2.0 * g0m) + 8.0 * om2;
    c.c_coef = 4.0 * (g - g0) * (g - 2.0 * g0m) + 8.0 * om2;
    c.d_coef = -r.gamma_s * ((g - g0) * (g - 2.0 * g0m) + 2.0 * om2) +
               8.0 * g0 * om2;
    return c;
}

double f_closed_form(const DerivedRates& r, double rabi, double t) {
    const LGCoefficients c = lg_coefficients(r, rabi);
    const double mu = 0.5 * r.gamma0 * r.m_param - 0.75 * r.gamma;
    const DampedOscillation osc = damped_oscillation(mu, r.mu_s, t);
    return c.a_coef * (c.b_coef + c.c_coef * osc.ec + c.d_coef * osc.es);
}

namespace {
std::atomic<long> g_f_mismatches{0};
}

long f_mismatch_count() { return g_f_mismatches.load(); }

double f_function(const DerivedRates& rates, double rabi, double t) {
    const double from_pg = 2.0 * ground_probability(rates, rabi, t);
    const double closed = f_closed_form(rates, rabi, t);
    if (std::abs(closed - from_pg) > 1e-8) {
        if (g_f_mismatches.fetch_add(1) == 0)
            std::fprintf(stderr,
                         "lgsim: F closed form deviates %.3e from 2 p_g at "
                         "t = %.6g; using the survival-probability value\n",
                         closed - from_pg, t);
        return from_pg;
    }
    return closed;
}

KPair k_pm(const DerivedRates& rates, double rabi, double t) {
    const double f1 = f_closed_form(rates, rabi, t);
    const double f2 = f_closed_form(rates, rabi, 2.0 * t);
    return {2.0 * f1 - f2 - 1.0, -2.0 * f1 - f2 + 3.0};
}

KPair k_pm_from_correlators(const DerivedRates& rates, double rabi, double t) {
    const double c1 = correlation_ground_prep(rates, rabi, t);
    const double c2 = correlation_ground_prep(rates, rabi, 2.0 * t);
    return {2.0 * c1 - c2, -2.0 * c1 - c2};
}

KPair k_pm_strong_driving(double rabi, double t) {
    const double c1 = std::cos(rabi * t);
    const double c2 = std::cos(2.0 * rabi * t);
    return {2.0 * c1 - c2, -2.0 * c1 - c2};
}

double apply_weak_measurement(double k_value, double xi) {
    if (!(xi > 0.0 && xi <= 1.0))
        throw InvalidParams("apply_weak_measurement: xi must be in (0, 1]");
    return xi * xi * k_value;
}

double weak_correlation_ground_prep(const DerivedRates& rates, double rabi,
                                    double t, double xi) {
    const MeasurementPair pair = MeasurementPair::weak(xi);
    const Mat2c prep = ground_density();
    const Mat2c readout = mat2_sub(pair.w_plus(), pair.w_minus());
    double corr = 0.0;
    for (int outcome : {+1, -1}) {
        const Mat2c w = pair.effect(outcome);
        Mat2c branch = mat2_mul(mat2_mul(w, prep), w);
        const double weight = mat2_trace(branch).real();
        if (weight < 1e-14) continue;
        branch = mat2_scale(branch, 1.0 / weight);
        const BlochVector evolved =
            evolve(bloch_from_density(branch), rates, rabi, t);
        const double m =
            mat2_trace(mat2_mul(readout, density_from_bloch(evolved))).real();
        corr += outcome * weight * m;
    }
    return corr;
}

KPair k_pm_weak_constructive(const DerivedRates& rates, double rabi, double t,
                             double xi) {
    const double c1 = weak_correlation_ground_prep(rates, rabi, t, xi);
    const double c2 = weak_correlation_ground_prep(rates, rabi, 2.0 * t, xi);
    return {2.0 * c1 - c2, -2.0 * c1 - c2};
}

const char* to_string(LGWhich which) {
    switch (which) {
        case LGWhich::KPlus: return "k_plus";
        case LGWhich::KMinus: return "k_minus";
        case LGWhich::K3: return "k3";
    }
    return "?";
}

double lg_parameter(const DerivedRates& rates, double rabi, double t,
                    LGWhich which, double xi) {
    double k = 0.0;
    switch (which) {
        case LGWhich::KPlus: k = k_pm(rates, rabi, t).k_plus; break;
        case LGWhich::KMinus: k = k_pm(rates, rabi, t).k_minus; break;
        case LGWhich::K3: return k3(rates, rabi, t, t);
    }
    return xi == 1.0 ? k : apply_weak_measurement(k, xi);
}

namespace {

// Golden-section maximization of f on [lo, hi] to x-resolution tol.
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

// Bisection of g(t) = k(t) - level between a non-violating and a violating
// abscissa.
template <typename F>
double bisect_crossing(F&& k, double t_out, double t_in, double level,
                       double tol) {
    while (std::abs(t_in - t_out) > tol) {
        const double mid = 0.5 * (t_in + t_out);
        if (k(mid) > level)
            t_in = mid;
        else
            t_out = mid;
    }
    return 0.5 * (t_in + t_out);
}

}  // namespace

ViolationReport scan_violation(const DerivedRates& rates, double rabi,
                               double t_lo, double t_hi, LGWhich which,
                               const ScanOptions& opts) {
    if (!(t_hi > t_lo)) throw InvalidParams("scan_violation: empty time range");
    if (opts.n_samples < 2)
        throw InvalidParams("scan_violation: need at least 2 samples");
    if (!(opts.xi > 0.0 && opts.xi <= 1.0))
        throw InvalidParams("scan_violation: xi must be in (0, 1]");

    const int n = opts.n_samples;
    const double dt = (t_hi - t_lo) / (n - 1);
    auto kf = [&](double t) { return lg_parameter(rates, rabi, t, which, opts.xi); };

    std::vector<double> ks(n);
    detail::parallel_for(n, opts.parallel,
                         [&](long i) { ks[i] = kf(t_lo + i * dt); });

    int best = 0;
    for (int i = 1; i < n; ++i)
        if (ks[i] > ks[best]) best = i;

    ViolationReport report;
    report.which = which;
    report.violation_eps = opts.violation_eps;
    report.xi = opts.xi;

    // Local refinement around the best sample.
    const double ra = t_lo + std::max(0, best - 1) * dt;
    const double rb = t_lo + std::min(n - 1, best + 1) * dt;
    auto [tm, km] = golden_max(kf, ra, rb, opts.t_refine_tol);
    if (km >= ks[best]) {
        report.k_max = km;
        report.t_at_max = tm;
    } else {  // refinement can only improve on the sampled maximum
        report.k_max = ks[best];
        report.t_at_max = t_lo + best * dt;
    }

    // Violation intervals from sample runs, endpoints refined by bisection.
    const double level = 1.0 + opts.violation_eps;
    int i = 0;
    while (i < n) {
        if (!(ks[i] > level)) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && ks[j + 1] > level) ++j;
        ViolationInterval iv;
        iv.t_start = (i == 0)
                         ? t_lo
                         : bisect_crossing(kf, t_lo + (i - 1) * dt,
                                           t_lo + i * dt, level,
                                           opts.t_refine_tol);
        iv.t_end = (j == n - 1)
                       ? t_hi
                       : bisect_crossing(kf, t_lo + (j + 1) * dt,
                                         t_lo + j * dt, level,
                                         opts.t_refine_tol);
        report.violation_intervals.push_back(iv);
        i = j + 1;
    }
    // A refined spike can clear the level between two non-violating
    // samples; recover its interval so that violated() and the interval
    // list stay consistent.
    if (report.violation_intervals.empty() && report.k_max > level) {
        const double tl = std::max(t_lo, report.t_at_max - dt);
        const double tr = std::min(t_hi, report.t_at_max + dt);
        ViolationInterval iv;
        iv.t_start = kf(tl) > level
                         ? tl
                         : bisect_crossing(kf, tl, report.t_at_max, level,
                                           opts.t_refine_tol);
        iv.t_end = kf(tr) > level
                       ? tr
                       : bisect_crossing(kf, tr, report.t_at_max, level,
                                         opts.t_refine_tol);
        report.violation_intervals.push_back(iv);
    }
    double total = 0.0;
    for (const auto& iv : report.violation_intervals)
        total += iv.t_end - iv.t_start;
    report.total_violation_time = total;
    return report;
}

}  // namespace lgsim
