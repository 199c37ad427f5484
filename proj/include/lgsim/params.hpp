#ifndef LGSIM_PARAMS_HPP
#define LGSIM_PARAMS_HPP

// Physical inputs for a resonantly driven two-level atom in a squeezed
// thermal reservoir, the reservoir-dressed rates derived from them, and the
// underdamped/overdamped classification. Units: hbar = k_B = 1, all rates
// and frequencies in multiples of the Rabi frequency unless stated.

#include <complex>

#include "lgsim/smallmat.hpp"

namespace lgsim {

struct SystemParams {
    double omega0 = 0.5;   // transition frequency (> 0)
    double rabi = 1.0;     // Rabi frequency Omega (> 0)
    double gamma0 = 0.0;   // spontaneous emission rate (>= 0)
    double beta = 10.0;    // inverse temperature (> 0 unless zero_temperature)
    bool zero_temperature = false;
    double squeeze_s = 0.0;      // squeezing magnitude (>= 0)
    double squeeze_theta = 0.0;  // squeezing phase (radians)

    // Throws InvalidParams if any field is outside its domain.
    void validate() const;
};

// Planck occupation 1/(exp(beta*omega0) - 1). beta = +inf is accepted and
// yields exactly 0 (the zero-temperature limit); beta <= 0 or omega0 <= 0
// is rejected.
double planck_occupation(double omega0, double beta);

// Reservoir moments for an arbitrary squeezing phase; the moment m is
// complex in general. Used by the density-matrix integrator path.
struct BathMoments {
    double n_th;  // bare Planck occupation at omega0
    double n;     // squeezing-dressed occupation
    cplx m;       // -cosh(s) sinh(s) e^{i theta} (2 n_th + 1)
};

BathMoments bath_moments(const SystemParams& p);

struct DerivedRates {
    double n_th;     // Planck occupation
    double n;        // dressed occupation, n >= n_th
    double m_param;  // real squeezing moment M (theta = 0), <= 0
    double gamma;    // total transition rate gamma0 (2n + 1)
    double gamma_s;  // gamma + 2 gamma0 M  (= gamma0 (2 n_th + 1) e^{-2s})
    cplx mu_s;       // sqrt(rabi^2 - (gamma_s/4)^2): real (underdamped) or
                     // purely imaginary (overdamped)
    double ratio_r;  // gamma0 / rabi
    double gamma0;   // spontaneous rate, carried along for the generator
};

// Derives all dressed rates. Requires squeeze_theta = 0 (UnsupportedTheta
// otherwise): the closed-form dynamics below is only valid for real M.
DerivedRates derive_rates(const SystemParams& p);

enum class Regime { Underdamped, Overdamped, Critical };

const char* to_string(Regime r);

// Underdamped iff rabi - gamma_s/4 > tol, overdamped iff < -tol, critical
// in between. Default tolerance 1e-12 * rabi.
Regime classify_regime(const DerivedRates& rates, double rabi, double tol);
Regime classify_regime(const DerivedRates& rates, double rabi);

}  // namespace lgsim

#endif
