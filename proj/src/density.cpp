#include "lgsim/density.hpp"

#include <cmath>
#include <sstream>

#include "lgsim/errors.hpp"

namespace lgsim {

Mat2c density_from_bloch(const BlochVector& v) {
    return {cplx(0.5 * (1.0 + v.v3), 0.0), 0.5 * cplx(v.v1, -v.v2),
            0.5 * cplx(v.v1, v.v2), cplx(0.5 * (1.0 - v.v3), 0.0)};
}

BlochVector bloch_from_density(const Mat2c& rho) {
    BlochVector v;
    v.v1 = (rho[1] + rho[2]).real();
    v.v2 = (rho[2] - rho[1]).imag();
    v.v3 = (rho[0] - rho[3]).real();
    return v;
}

Mat2c ground_density() {
    return {cplx(0), cplx(0), cplx(0), cplx(1)};
}

Mat2c excited_density() {
    return {cplx(1), cplx(0), cplx(0), cplx(0)};
}

double ground_population(const Mat2c& rho) {
    return rho[3].real();
}

double trace_error(const Mat2c& rho) {
    return std::abs(mat2_trace(rho) - cplx(1.0));
}

double hermiticity_error(const Mat2c& rho) {
    return mat2_max_abs(mat2_sub(rho, mat2_adjoint(rho)));
}

double min_eigenvalue(const Mat2c& rho) {
    // Eigenvalues of the Hermitian part: h +/- sqrt(d^2 + |b|^2).
    const double a = rho[0].real();
    const double c = rho[3].real();
    const cplx b = 0.5 * (rho[1] + std::conj(rho[2]));
    const double h = 0.5 * (a + c);
    const double d = 0.5 * (a - c);
    return h - std::sqrt(d * d + std::norm(b));
}

void validate_density(const Mat2c& rho, const DensityTolerances& tol) {
    std::ostringstream bad;
    const double te = trace_error(rho);
    const double he = hermiticity_error(rho);
    const double ev = min_eigenvalue(rho);
    if (te > tol.trace) bad << "trace deviates by " << te << "; ";
    if (he > tol.hermiticity) bad << "hermiticity error " << he << "; ";
    if (ev < -tol.positivity) bad << "negative eigenvalue " << ev << "; ";
    const std::string msg = bad.str();
    if (!msg.empty()) throw PhysicsError("invalid density matrix: " + msg);
}

double coherence(const Mat2c& rho) {
    if (hermiticity_error(rho) > 1e-10)
        throw PhysicsError("coherence: input is not Hermitian");
    return std::abs(rho[1]) + std::abs(rho[2]);
}

double coherence(const BlochVector& v) {
    return std::hypot(v.v1, v.v2);
}

}  // namespace lgsim
