#ifndef LGSIM_SMALLMAT_HPP
#define LGSIM_SMALLMAT_HPP

// Small fixed-size linear algebra: 3x3 real matrices for the Bloch-space
// generator and 2x2 complex matrices for density operators. Everything is
// stack-allocated; no external linear algebra library is pulled in for
// matrices this size.

#include <array>
#include <complex>

namespace lgsim {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<double, 9>;  // row-major

using cplx = std::complex<double>;
using Mat2c = std::array<cplx, 4>;  // row-major, basis {|e>, |g>}

// ---- 3x3 real ----

Mat3 mat3_identity();
Mat3 mat3_mul(const Mat3& a, const Mat3& b);
Vec3 mat3_apply(const Mat3& a, const Vec3& x);
Mat3 mat3_add(const Mat3& a, const Mat3& b);
Mat3 mat3_scale(const Mat3& a, double s);
double mat3_inf_norm(const Mat3& a);
double mat3_max_abs_diff(const Mat3& a, const Mat3& b);
double mat3_trace(const Mat3& a);

// Solves A X = B for X (3x3 unknowns) by Gaussian elimination with
// partial pivoting. Throws PhysicsError on a singular pivot.
Mat3 mat3_solve(const Mat3& a, const Mat3& b);

// exp(A) by scaling-and-squaring with a diagonal Pade(6,6) approximant.
// Accurate to ~1e-14 in the max-entry sense for the contraction-type
// matrices used here (log-norm <= 0).
Mat3 mat3_expm(const Mat3& a);

// ---- 2x2 complex ----

Mat2c mat2_mul(const Mat2c& a, const Mat2c& b);
Mat2c mat2_add(const Mat2c& a, const Mat2c& b);
Mat2c mat2_sub(const Mat2c& a, const Mat2c& b);
Mat2c mat2_scale(const Mat2c& a, cplx s);
Mat2c mat2_adjoint(const Mat2c& a);
cplx mat2_trace(const Mat2c& a);
double mat2_max_abs(const Mat2c& a);

inline Mat2c mat2_zero() { return {cplx(0), cplx(0), cplx(0), cplx(0)}; }

}  // namespace lgsim

#endif
