#include "lgsim/bloch.hpp"

#include <cmath>
#include <sstream>

#include "lgsim/errors.hpp"

namespace lgsim {

double BlochVector::norm() const {
    return std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
}

cplx sigma_plus_expectation(const BlochVector& v) {
    return 0.5 * cplx(v.v1, v.v2);
}

GeneratorMatrix generator(const DerivedRates& r, double rabi) {
    const double g0m = r.gamma0 * r.m_param;
    GeneratorMatrix out;
    out.g = {-r.gamma / 2.0 - g0m, 0.0, 0.0,
             0.0, -r.gamma / 2.0 + g0m, rabi,
             0.0, -rabi, -r.gamma};
    out.m = {0.0, 0.0, -r.gamma0};
    return out;
}

SpectralData eigenvalues(const DerivedRates& r) {
    const double g0m = r.gamma0 * r.m_param;
    const cplx mean(0.5 * g0m - 0.75 * r.gamma, 0.0);
    SpectralData s;
    s.lambda1 = cplx(-r.gamma / 2.0 - g0m, 0.0);
    s.lambda2 = mean + cplx(0.0, 1.0) * r.mu_s;
    s.lambda3 = mean - cplx(0.0, 1.0) * r.mu_s;
    return s;
}

StationaryState stationary_state(const DerivedRates& r, double rabi) {
    const double g0m = r.gamma0 * r.m_param;
    const double denom =
        r.gamma * r.gamma - 2.0 * r.gamma * g0m + 2.0 * rabi * rabi;
    StationaryState s;
    s.v.v1 = 0.0;
    s.v.v2 = -2.0 * r.gamma0 * rabi / denom;
    s.v.v3 = -r.gamma0 * (r.gamma - 2.0 * g0m) / denom;
    s.sigma_plus = cplx(0.0, -r.gamma0 * rabi / denom);
    s.excited_population = 0.5 * (1.0 + s.v.v3);
    return s;
}

namespace {

// sin(w)/w with a series branch near the origin.
cplx sinc(cplx w) {
    if (std::abs(w) < 0.1) {
        const cplx w2 = w * w;
        return 1.0 + w2 * (-1.0 / 6.0 +
               w2 * (1.0 / 120.0 + w2 * (-1.0 / 5040.0 + w2 / 362880.0)));
    }
    return std::sin(w) / w;
}

double require_real(cplx z, const char* what) {
    if (std::abs(z.imag()) >= 1e-10) {
        std::ostringstream msg;
        msg << what << ": residual imaginary part " << z.imag();
        throw PhysicsError(msg.str());
    }
    return z.real();
}

}  // namespace

DampedOscillation damped_oscillation(double mu, cplx mu_s, double t) {
    const cplx i(0.0, 1.0);
    const cplx lam2 = mu + i * mu_s;
    const cplx lam3 = mu - i * mu_s;
    // e^{mu t} cos(mu_s t) = (e^{lam2 t} + e^{lam3 t})/2. Both exponents
    // have non-positive real part for physical rates, so nothing here can
    // overflow even deep in the overdamped regime where cos/sin of the
    // imaginary argument grow like e^{|mu_s| t}.
    const cplx e2 = std::exp(lam2 * t);
    const cplx e3 = std::exp(lam3 * t);
    DampedOscillation out;
    out.ec = require_real(0.5 * (e2 + e3), "damped_oscillation ec");
    const cplx w = mu_s * t;
    if (std::abs(w) < 0.1) {
        // The exponential difference cancels here; use the sinc series.
        out.es = require_real(std::exp(cplx(mu * t, 0.0)) * t * sinc(w),
                              "damped_oscillation es");
    } else {
        out.es = require_real((e2 - e3) / (2.0 * i * mu_s),
                              "damped_oscillation es");
    }
    return out;
}

Mat3 propagator(const DerivedRates& r, double rabi, double t) {
    const double g0m = r.gamma0 * r.m_param;
    const double mu = 0.5 * g0m - 0.75 * r.gamma;
    const DampedOscillation osc = damped_oscillation(mu, r.mu_s, t);
    const double q = r.gamma_s / 4.0;
    Mat3 p{};
    p[0] = std::exp(-0.5 * r.gamma_s * t);
    p[4] = osc.ec + q * osc.es;
    p[5] = rabi * osc.es;
    p[7] = -rabi * osc.es;
    p[8] = osc.ec - q * osc.es;
    return p;
}

Mat3 propagator_expm(const DerivedRates& r, double rabi, double t) {
    return mat3_expm(mat3_scale(generator(r, rabi).g, t));
}

void validate_propagator(const DerivedRates& r, double rabi,
                         std::span<const double> ts, double tol) {
    for (double t : ts) {
        const double dev =
            mat3_max_abs_diff(propagator(r, rabi, t), propagator_expm(r, rabi, t));
        if (dev > tol) {
            std::ostringstream msg;
            msg << "propagator cross-validation failed: closed form deviates "
                << dev << " from the matrix exponential at t = " << t
                << " (gamma = " << r.gamma << ", gamma_s = " << r.gamma_s
                << ", rabi = " << rabi << ")";
            throw PhysicsError(msg.str());
        }
    }
}

BlochVector evolve(const BlochVector& initial, const DerivedRates& r,
                   double rabi, double t) {
    const StationaryState s = stationary_state(r, rabi);
    const Vec3 dev0 = {initial.v1 - s.v.v1, initial.v2 - s.v.v2,
                       initial.v3 - s.v.v3};
    const Vec3 dev = mat3_apply(propagator(r, rabi, t), dev0);
    return {dev[0] + s.v.v1, dev[1] + s.v.v2, dev[2] + s.v.v3};
}

double ground_probability(const DerivedRates& r, double rabi, double t,
                          const BlochVector& initial) {
    return 0.5 * (1.0 - evolve(initial, r, rabi, t).v3);
}

}  // namespace lgsim
