#ifndef LGSIM_BLOCH_HPP
#define LGSIM_BLOCH_HPP

// Closed-form Bloch dynamics of the driven atom: the 3x3 generator of
// d<sigma>/dt = G <sigma> + m, its spectrum, the stationary state, and the
// exact propagator assembled from damped-rotation closed forms. The
// propagator is cross-validated against a numerical matrix exponential of
// the generator; the matrix exponential is authoritative on disagreement.

#include <complex>
#include <span>

#include "lgsim/params.hpp"
#include "lgsim/smallmat.hpp"

namespace lgsim {

struct BlochVector {
    double v1 = 0.0;  // <sigma_1>
    double v2 = 0.0;  // <sigma_2>
    double v3 = 0.0;  // <sigma_3>

    double norm() const;
    Vec3 to_vec3() const { return {v1, v2, v3}; }
    static BlochVector from_vec3(const Vec3& v) { return {v[0], v[1], v[2]}; }
    static BlochVector ground() { return {0.0, 0.0, -1.0}; }
    static BlochVector excited() { return {0.0, 0.0, 1.0}; }
};

// <sigma_+> = (<sigma_1> + i <sigma_2>)/2
cplx sigma_plus_expectation(const BlochVector& v);

struct GeneratorMatrix {
    Mat3 g;  // diag(-gamma/2 - g0 M, -gamma/2 + g0 M, -gamma), +/-Omega in 2<->3
    Vec3 m;  // (0, 0, -gamma0)
};

GeneratorMatrix generator(const DerivedRates& rates, double rabi);

struct SpectralData {
    cplx lambda1;  // -gamma/2 - gamma0 M = -gamma_s/2 (decoupled v1 mode)
    cplx lambda2;  // gamma0 M/2 - 3 gamma/4 + i mu_s
    cplx lambda3;  // gamma0 M/2 - 3 gamma/4 - i mu_s
};

// Closed-form spectrum of the generator; agrees with a numerical
// eigensolver applied to generator() (tested).
SpectralData eigenvalues(const DerivedRates& rates);

struct StationaryState {
    BlochVector v;                // G v + m = 0
    cplx sigma_plus;              // -i gamma0 rabi / (gamma^2 - 2 gamma g0 M + 2 rabi^2)
    double excited_population;   // (1 + v3)/2
};

StationaryState stationary_state(const DerivedRates& rates, double rabi);

// Stable evaluation of the damped oscillation pair
//   ec = e^{mu t} cos(mu_s t),   es = e^{mu t} sin(mu_s t)/mu_s
// through the eigen-exponentials e^{(mu +/- i mu_s) t}, so the overdamped
// regime (imaginary mu_s, hyperbolic growth of cos/sin) never overflows.
// es tends to t e^{mu t} as mu_s -> 0. Both results are real; residual
// imaginary parts above 1e-10 raise PhysicsError.
struct DampedOscillation {
    double ec;
    double es;
};
DampedOscillation damped_oscillation(double mu, cplx mu_s, double t);

// Propagator P(t) with Sigma(t) = P(t) Sigma(0) for the homogeneous
// deviation Sigma = v - v_s: component 1 decays as e^{-gamma_s t/2};
// components 2-3 rotate at mu_s under the e^{(2 g0 M - 3 gamma) t/4}
// envelope. Entries are evaluated in complex arithmetic and truncated to
// real after a residue check.
Mat3 propagator(const DerivedRates& rates, double rabi, double t);

// Reference route: numerical exp(G t) of the generator matrix.
Mat3 propagator_expm(const DerivedRates& rates, double rabi, double t);

// Cross-validates propagator() against propagator_expm() entrywise at the
// given times; throws PhysicsError naming the worst deviation if it
// exceeds tol. Called once per parameter set by the driver paths.
void validate_propagator(const DerivedRates& rates, double rabi,
                         std::span<const double> ts, double tol = 1e-10);

// v(t) = P(t) (v(0) - v_s) + v_s
BlochVector evolve(const BlochVector& initial, const DerivedRates& rates,
                   double rabi, double t);

// Probability of finding the atom in |g> at time t: (1 - v3(t))/2.
double ground_probability(const DerivedRates& rates, double rabi, double t,
                          const BlochVector& initial = BlochVector::ground());

}  // namespace lgsim

#endif
