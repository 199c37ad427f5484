#ifndef LGSIM_ERRORS_HPP
#define LGSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lgsim {

// Exit-code mapping used by the CLI: InvalidParams/config -> 1,
// PhysicsError -> 2, IoError -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rejected physical inputs (negative rates, beta <= 0 without the
// zero-temperature flag, sweep values outside their domain, ...).
struct InvalidParams : Error {
    using Error::Error;
};

// The closed-form Bloch solution is derived for a real squeezing moment;
// a nonzero squeezing phase is only accepted by the density-matrix
// integrator path.
struct UnsupportedTheta : InvalidParams {
    using InvalidParams::InvalidParams;
};

// A computed quantity broke a physical invariant (trace, Hermiticity,
// positivity, propagator cross-validation, residual imaginary parts).
struct PhysicsError : Error {
    using Error::Error;
};

// Adaptive integration could not proceed (step-size underflow).
struct IntegrationError : PhysicsError {
    IntegrationError(const std::string& what, double last_good_time)
        : PhysicsError(what), last_good_time(last_good_time) {}
    double last_good_time;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace lgsim

#endif
