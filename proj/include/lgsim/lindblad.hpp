#ifndef LGSIM_LINDBLAD_HPP
#define LGSIM_LINDBLAD_HPP

// Brute-force integration of the full master equation at the density-matrix
// level:
//   drho/dt = (i Omega/2)[sigma_+ + sigma_-, rho]
//           + gamma0 n     D[sigma_+](rho)
//           + gamma0 (n+1) D[sigma_-](rho)
//           - gamma0 M sigma_+ rho sigma_+ - gamma0 M* sigma_- rho sigma_-
// with D[A](rho) = A rho A^dag - {A^dag A, rho}/2. This path makes no use
// of the closed-form Bloch solution and serves as the ground truth for it.
// Any squeezing phase is accepted (complex M).

#include <span>
#include <vector>

#include "lgsim/density.hpp"
#include "lgsim/measurement.hpp"
#include "lgsim/params.hpp"

namespace lgsim {

// Coefficients of the master equation, derived once per parameter set.
struct LindbladContext {
    double rabi;
    double gamma0;
    double n;
    cplx m;
};

LindbladContext lindblad_context(const SystemParams& p);

// Right-hand side of the master equation, all five terms assembled
// literally from operator products.
Mat2c lindblad_rhs(const Mat2c& rho, const LindbladContext& ctx);
Mat2c lindblad_rhs(const Mat2c& rho, const SystemParams& p);

struct IntegratorOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    long max_steps = 200000000;
    DensityTolerances density_tol = {};
};

struct StepStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evals = 0;
    // worst invariant deviations seen across emitted samples
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 1.0;
};

struct TrajectorySample {
    double t;
    Mat2c rho;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;  // times strictly increasing
    StepStats stats;
    IntegratorOptions options;
};

// Adaptive embedded Dormand-Prince 5(4) integration of the master equation
// from t = 0 to t_end. Samples are taken exactly at the times in
// sample_grid (strictly increasing, within [0, t_end]); the step size is
// clamped so every sample time is a step endpoint. Each emitted sample is
// validated against the density-matrix invariants (PhysicsError on
// violation); step-size underflow raises IntegrationError carrying the
// last good time. An empty grid yields the single sample (0, rho0).
Trajectory integrate(const Mat2c& rho0, const SystemParams& p, double t_end,
                     std::span<const double> sample_grid,
                     IntegratorOptions opts = {});

// Two-time correlator of M measured at 0 and at each lag in lag_grid,
//   C(0, t) = sum_{m,n} m n Tr[ E_m  evolve_t[ E_n prep E_n ] ],
// evaluated by explicit branching: collapse with the outcome-n effect,
// renormalize, integrate each branch, recombine with the outcome weights.
// A branch of probability < 1e-14 contributes zero. Returns one value per
// lag. Uses the pair's effects, so unsharp (xi < 1) correlators come out
// of the same construction.
std::vector<double> two_time_correlation(const Mat2c& prep,
                                         const SystemParams& p,
                                         std::span<const double> lag_grid,
                                         const MeasurementPair& pair,
                                         IntegratorOptions opts = {});

}  // namespace lgsim

#endif
