#include "lgsim/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lgsim/errors.hpp"

namespace lgsim {

namespace {

const Mat2c kSigmaPlus = {cplx(0), cplx(1), cplx(0), cplx(0)};   // |e><g|
const Mat2c kSigmaMinus = {cplx(0), cplx(0), cplx(1), cplx(0)};  // |g><e|
const Mat2c kSigma1 = {cplx(0), cplx(1), cplx(1), cplx(0)};

// A rho A^dag - (A^dag A rho + rho A^dag A)/2
Mat2c dissipator(const Mat2c& a, const Mat2c& rho) {
    const Mat2c ad = mat2_adjoint(a);
    const Mat2c ada = mat2_mul(ad, a);
    const Mat2c sandwich = mat2_mul(mat2_mul(a, rho), ad);
    const Mat2c anti =
        mat2_add(mat2_mul(ada, rho), mat2_mul(rho, ada));
    return mat2_sub(sandwich, mat2_scale(anti, 0.5));
}

}  // namespace

LindbladContext lindblad_context(const SystemParams& p) {
    const BathMoments bm = bath_moments(p);
    return {p.rabi, p.gamma0, bm.n, bm.m};
}

Mat2c lindblad_rhs(const Mat2c& rho, const LindbladContext& ctx) {
    // Driving commutator (i Omega/2) [sigma_+ + sigma_-, rho].
    Mat2c d = mat2_scale(mat2_sub(mat2_mul(kSigma1, rho), mat2_mul(rho, kSigma1)),
                         cplx(0.0, 0.5 * ctx.rabi));
    // Thermal absorption and emission.
    d = mat2_add(d, mat2_scale(dissipator(kSigmaPlus, rho), ctx.gamma0 * ctx.n));
    d = mat2_add(d, mat2_scale(dissipator(kSigmaMinus, rho),
                               ctx.gamma0 * (ctx.n + 1.0)));
    // Squeezing terms -gamma0 M s+ rho s+ - gamma0 M* s- rho s-.
    d = mat2_sub(d, mat2_scale(mat2_mul(mat2_mul(kSigmaPlus, rho), kSigmaPlus),
                               ctx.gamma0 * ctx.m));
    d = mat2_sub(d, mat2_scale(mat2_mul(mat2_mul(kSigmaMinus, rho), kSigmaMinus),
                               ctx.gamma0 * std::conj(ctx.m)));
    return d;
}

Mat2c lindblad_rhs(const Mat2c& rho, const SystemParams& p) {
    return lindblad_rhs(rho, lindblad_context(p));
}

namespace {

// Dormand-Prince 5(4) tableau (FSAL: the 7th stage is the next step's
// first).
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA2[1] = {1.0 / 5};
constexpr double kA3[2] = {3.0 / 40, 9.0 / 40};
constexpr double kA4[3] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
constexpr double kA5[4] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561,
                           -212.0 / 729};
constexpr double kA6[5] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247,
                           49.0 / 176, -5103.0 / 18656};
constexpr double kB[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                          -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kBHat[7] = {5179.0 / 57600,   0.0,
                             7571.0 / 16695,   393.0 / 640,
                             -92097.0 / 339200, 187.0 / 2100,
                             1.0 / 40};

Mat2c axpy(const Mat2c& y, double h, const Mat2c& k, double coef) {
    Mat2c out = y;
    for (int i = 0; i < 4; ++i) out[i] += h * coef * k[i];
    return out;
}

double error_norm(const Mat2c& err, const Mat2c& y0, const Mat2c& y1,
                  double rtol, double atol) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double scale =
            atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = std::abs(err[i]) / scale;
        acc += r * r;
    }
    return std::sqrt(acc / 4.0);
}

// Project back onto the exactly-preserved constraints (Hermiticity and
// unit trace) after each accepted step, so pure roundoff cannot accumulate
// over long stiff runs.
void project_constraints(Mat2c& y) {
    const cplx off = 0.5 * (y[1] + std::conj(y[2]));
    y[1] = off;
    y[2] = std::conj(off);
    y[0] = cplx(y[0].real(), 0.0);
    y[3] = cplx(y[3].real(), 0.0);
    const double tr = y[0].real() + y[3].real();
    if (tr > 0.25) {
        const double inv = 1.0 / tr;
        for (int i = 0; i < 4; ++i) y[i] *= inv;
    }
}

}  // namespace

Trajectory integrate(const Mat2c& rho0, const SystemParams& p, double t_end,
                     std::span<const double> sample_grid,
                     IntegratorOptions opts) {
    if (!(t_end >= 0.0)) throw InvalidParams("integrate: t_end must be >= 0");
    if (!(opts.rtol > 0.0) || !(opts.atol > 0.0))
        throw InvalidParams("integrate: tolerances must be > 0");
    validate_density(rho0, opts.density_tol);
    for (std::size_t i = 0; i < sample_grid.size(); ++i) {
        if (sample_grid[i] < 0.0 || sample_grid[i] > t_end ||
            (i > 0 && sample_grid[i] <= sample_grid[i - 1]))
            throw InvalidParams(
                "integrate: sample grid must be strictly increasing within "
                "[0, t_end]");
    }

    const LindbladContext ctx = lindblad_context(p);
    Trajectory traj;
    traj.options = opts;

    auto record = [&](double t, const Mat2c& rho) {
        validate_density(rho, opts.density_tol);
        traj.stats.max_trace_error =
            std::max(traj.stats.max_trace_error, trace_error(rho));
        traj.stats.max_hermiticity_error =
            std::max(traj.stats.max_hermiticity_error, hermiticity_error(rho));
        traj.stats.min_eigenvalue =
            std::min(traj.stats.min_eigenvalue, min_eigenvalue(rho));
        traj.samples.push_back({t, rho});
    };

    std::size_t next_sample = 0;
    if (sample_grid.empty()) {
        record(0.0, rho0);
        return traj;
    }
    if (sample_grid[next_sample] == 0.0) {
        record(0.0, rho0);
        ++next_sample;
    }

    double t = 0.0;
    Mat2c y = rho0;
    Mat2c k1 = lindblad_rhs(y, ctx);
    ++traj.stats.rhs_evals;

    // Initial step: conservative guess, the controller adapts within a few
    // steps either way.
    double fnorm = 0.0;
    for (int i = 0; i < 4; ++i) fnorm = std::max(fnorm, std::abs(k1[i]));
    double h = std::min(t_end, 0.01 / (1.0 + fnorm));

    // Integrate sample to sample; each sample time is hit exactly by
    // clamping the step, never by interpolation.
    while (next_sample < sample_grid.size()) {
        if (traj.stats.accepted + traj.stats.rejected > opts.max_steps)
            throw IntegrationError("integrate: step budget exhausted", t);
        const double target = sample_grid[next_sample];
        double h_use = h;
        bool hit_sample = false;
        if (t + h_use >= target) {
            h_use = target - t;
            hit_sample = true;
        }
        if (h_use < 1e-14 * std::max(1.0, std::abs(t)))
            throw IntegrationError("integrate: step size underflow", t);
        Mat2c k2, k3, k4, k5, k6, k7, y5;
        {
            const double hs = h_use;
            Mat2c s = axpy(y, hs, k1, kA2[0]);
            k2 = lindblad_rhs(s, ctx);
            s = axpy(axpy(y, hs, k1, kA3[0]), hs, k2, kA3[1]);
            k3 = lindblad_rhs(s, ctx);
            s = axpy(axpy(axpy(y, hs, k1, kA4[0]), hs, k2, kA4[1]), hs, k3,
                     kA4[2]);
            k4 = lindblad_rhs(s, ctx);
            s = axpy(axpy(axpy(axpy(y, hs, k1, kA5[0]), hs, k2, kA5[1]), hs, k3,
                          kA5[2]),
                     hs, k4, kA5[3]);
            k5 = lindblad_rhs(s, ctx);
            s = axpy(axpy(axpy(axpy(axpy(y, hs, k1, kA6[0]), hs, k2, kA6[1]),
                               hs, k3, kA6[2]),
                          hs, k4, kA6[3]),
                     hs, k5, kA6[4]);
            k6 = lindblad_rhs(s, ctx);
            // 5th-order solution (b row equals the last stage row).
            y5 = y;
            const Mat2c* ks[6] = {&k1, &k2, &k3, &k4, &k5, &k6};
            for (int j = 0; j < 6; ++j)
                if (kB[j] != 0.0) y5 = axpy(y5, hs, *ks[j], kB[j]);
            k7 = lindblad_rhs(y5, ctx);
            traj.stats.rhs_evals += 6;
        }

        Mat2c err{};
        {
            const Mat2c* ks[7] = {&k1, &k2, &k3, &k4, &k5, &k6, &k7};
            for (int j = 0; j < 7; ++j) {
                const double d = kB[j] - kBHat[j];
                if (d == 0.0) continue;
                for (int i = 0; i < 4; ++i) err[i] += h_use * d * (*ks[j])[i];
            }
        }
        const double errn = error_norm(err, y, y5, opts.rtol, opts.atol);
        const double factor =
            std::clamp(errn > 0.0 ? 0.9 * std::pow(errn, -0.2) : 5.0, 0.2, 5.0);
        if (errn <= 1.0) {
            t = hit_sample ? target : t + h_use;
            y = y5;
            project_constraints(y);
            k1 = lindblad_rhs(y, ctx);  // projection invalidates plain FSAL
            ++traj.stats.rhs_evals;
            ++traj.stats.accepted;
            if (hit_sample) {
                record(t, y);
                ++next_sample;
            }
            // Grow from the natural step, not from a sample-clamped one.
            h = std::max(h_use * factor, hit_sample ? h : 0.0);
        } else {
            ++traj.stats.rejected;
            h = h_use * factor;
        }
    }
    return traj;
}

std::vector<double> two_time_correlation(const Mat2c& prep,
                                         const SystemParams& p,
                                         std::span<const double> lag_grid,
                                         const MeasurementPair& pair,
                                         IntegratorOptions opts) {
    validate_density(prep, opts.density_tol);
    if (lag_grid.empty()) return {};
    std::vector<double> corr(lag_grid.size(), 0.0);
    const Mat2c readout = mat2_sub(pair.effect(+1), pair.effect(-1));
    const double t_end = lag_grid.back();

    for (int outcome : {+1, -1}) {
        const Mat2c e = pair.effect(outcome);
        Mat2c branch = mat2_mul(mat2_mul(e, prep), e);
        const double prob = mat2_trace(branch).real();
        if (prob < 1e-14) continue;  // zero-probability branch contributes 0
        branch = mat2_scale(branch, 1.0 / prob);

        std::vector<double> grid(lag_grid.begin(), lag_grid.end());
        std::size_t skip_zero = 0;
        if (!grid.empty() && grid.front() == 0.0) {
            corr[0] += outcome * prob * mat2_trace(mat2_mul(readout, branch)).real();
            grid.erase(grid.begin());
            skip_zero = 1;
        }
        if (grid.empty()) continue;
        const Trajectory traj = integrate(branch, p, t_end, grid, opts);
        for (std::size_t j = 0; j < traj.samples.size(); ++j) {
            const double m =
                mat2_trace(mat2_mul(readout, traj.samples[j].rho)).real();
            corr[skip_zero + j] += outcome * prob * m;
        }
    }
    return corr;
}

}  // namespace lgsim
