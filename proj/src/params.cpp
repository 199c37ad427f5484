#include "lgsim/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lgsim/errors.hpp"

namespace lgsim {

void SystemParams::validate() const {
    std::ostringstream bad;
    if (!(omega0 > 0.0)) bad << "omega0 must be > 0 (got " << omega0 << "); ";
    if (!(rabi > 0.0)) bad << "rabi must be > 0 (got " << rabi << "); ";
    if (!(gamma0 >= 0.0)) bad << "gamma0 must be >= 0 (got " << gamma0 << "); ";
    if (!zero_temperature && !(beta > 0.0))
        bad << "beta must be > 0 unless zero_temperature is set (got " << beta
            << "); ";
    if (!(squeeze_s >= 0.0))
        bad << "squeeze_s must be >= 0 (got " << squeeze_s << "); ";
    if (!std::isfinite(squeeze_theta))
        bad << "squeeze_theta must be finite; ";
    const std::string msg = bad.str();
    if (!msg.empty()) throw InvalidParams("invalid parameters: " + msg);
}

double planck_occupation(double omega0, double beta) {
    if (!(omega0 > 0.0))
        throw InvalidParams("planck_occupation: omega0 must be > 0");
    if (!(beta > 0.0))
        throw InvalidParams("planck_occupation: beta must be > 0");
    if (std::isinf(beta)) return 0.0;
    // expm1 keeps the near-classical limit beta*omega0 << 1 accurate.
    return 1.0 / std::expm1(beta * omega0);
}

BathMoments bath_moments(const SystemParams& p) {
    p.validate();
    const double n_th =
        p.zero_temperature ? 0.0 : planck_occupation(p.omega0, p.beta);
    const double s = p.squeeze_s;
    const double ch = std::cosh(s);
    const double sh = std::sinh(s);
    BathMoments out;
    out.n_th = n_th;
    out.n = n_th * (ch * ch + sh * sh) + sh * sh;
    out.m = -ch * sh * (2.0 * n_th + 1.0) *
            std::exp(cplx(0.0, p.squeeze_theta));
    return out;
}

DerivedRates derive_rates(const SystemParams& p) {
    const BathMoments bm = bath_moments(p);
    if (p.squeeze_theta != 0.0)
        throw UnsupportedTheta(
            "derive_rates: the closed-form path requires squeeze_theta = 0; "
            "use the density-matrix integrator for a nonzero phase");
    DerivedRates r;
    r.n_th = bm.n_th;
    r.n = bm.n;
    r.m_param = bm.m.real();
    r.gamma = p.gamma0 * (2.0 * r.n + 1.0);
    r.gamma_s = r.gamma + 2.0 * p.gamma0 * r.m_param;
    const double q = r.gamma_s / 4.0;
    // Complex square root keeps one code path for both regimes: mu_s comes
    // out real for rabi > gamma_s/4 and purely imaginary otherwise.
    r.mu_s = std::sqrt(cplx(p.rabi * p.rabi - q * q, 0.0));
    r.ratio_r = p.gamma0 / p.rabi;
    r.gamma0 = p.gamma0;
    return r;
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Underdamped: return "underdamped";
        case Regime::Overdamped: return "overdamped";
        case Regime::Critical: return "critical";
    }
    return "?";
}

Regime classify_regime(const DerivedRates& rates, double rabi, double tol) {
    const double margin = rabi - rates.gamma_s / 4.0;
    if (margin > tol) return Regime::Underdamped;
    if (margin < -tol) return Regime::Overdamped;
    return Regime::Critical;
}

Regime classify_regime(const DerivedRates& rates, double rabi) {
    return classify_regime(rates, rabi, 1e-12 * rabi);
}

}  // namespace lgsim
