#include "lgsim/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "lgsim/errors.hpp"

namespace lgsim {

Mat3 mat3_identity() {
    return {1, 0, 0, 0, 1, 0, 0, 0, 1};
}

Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            const double aik = a[3 * i + k];
            for (int j = 0; j < 3; ++j) c[3 * i + j] += aik * b[3 * k + j];
        }
    return c;
}

Vec3 mat3_apply(const Mat3& a, const Vec3& x) {
    Vec3 y{};
    for (int i = 0; i < 3; ++i)
        y[i] = a[3 * i] * x[0] + a[3 * i + 1] * x[1] + a[3 * i + 2] * x[2];
    return y;
}

Mat3 mat3_add(const Mat3& a, const Mat3& b) {
    Mat3 c;
    for (int i = 0; i < 9; ++i) c[i] = a[i] + b[i];
    return c;
}

Mat3 mat3_scale(const Mat3& a, double s) {
    Mat3 c;
    for (int i = 0; i < 9; ++i) c[i] = a[i] * s;
    return c;
}

double mat3_inf_norm(const Mat3& a) {
    double best = 0.0;
    for (int i = 0; i < 3; ++i) {
        double row = std::abs(a[3 * i]) + std::abs(a[3 * i + 1]) +
                     std::abs(a[3 * i + 2]);
        best = std::max(best, row);
    }
    return best;
}

double mat3_max_abs_diff(const Mat3& a, const Mat3& b) {
    double best = 0.0;
    for (int i = 0; i < 9; ++i) best = std::max(best, std::abs(a[i] - b[i]));
    return best;
}

double mat3_trace(const Mat3& a) {
    return a[0] + a[4] + a[8];
}

Mat3 mat3_solve(const Mat3& a, const Mat3& b) {
    // Gaussian elimination with partial pivoting on the augmented system.
    double aug[3][6];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            aug[i][j] = a[3 * i + j];
            aug[i][3 + j] = b[3 * i + j];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[pivot][col])) pivot = r;
        if (std::abs(aug[pivot][col]) < 1e-300)
            throw PhysicsError("mat3_solve: singular matrix");
        if (pivot != col)
            for (int j = 0; j < 6; ++j) std::swap(aug[pivot][j], aug[col][j]);
        const double inv = 1.0 / aug[col][col];
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = aug[r][col] * inv;
            for (int j = col; j < 6; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    Mat3 x;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) x[3 * i + j] = aug[i][3 + j] / aug[i][i];
    return x;
}

Mat3 mat3_expm(const Mat3& a) {
    // Scale so that ||A/2^s|| <= 0.5, apply the diagonal Pade(6,6)
    // approximant, square back up.
    const double norm = mat3_inf_norm(a);
    int s = 0;
    if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    Mat3 as = mat3_scale(a, std::ldexp(1.0, -s));

    // Pade(6,6) coefficients 1, 1/2, 5/44, 1/66, 1/792, 1/15840, 1/665280.
    static const double c[7] = {1.0,        1.0 / 2.0,     5.0 / 44.0,
                                1.0 / 66.0, 1.0 / 792.0,   1.0 / 15840.0,
                                1.0 / 665280.0};
    Mat3 pow = mat3_identity();
    Mat3 num = mat3_scale(pow, c[0]);  // sum c_k A^k
    Mat3 den = num;                    // sum c_k (-A)^k
    double sign = 1.0;
    for (int k = 1; k <= 6; ++k) {
        pow = mat3_mul(pow, as);
        sign = -sign;
        num = mat3_add(num, mat3_scale(pow, c[k]));
        den = mat3_add(den, mat3_scale(pow, sign * c[k]));
    }
    Mat3 r = mat3_solve(den, num);
    for (int i = 0; i < s; ++i) r = mat3_mul(r, r);
    return r;
}

Mat2c mat2_mul(const Mat2c& a, const Mat2c& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2c mat2_add(const Mat2c& a, const Mat2c& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

Mat2c mat2_sub(const Mat2c& a, const Mat2c& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

Mat2c mat2_scale(const Mat2c& a, cplx s) {
    return {a[0] * s, a[1] * s, a[2] * s, a[3] * s};
}

Mat2c mat2_adjoint(const Mat2c& a) {
    return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]),
            std::conj(a[3])};
}

cplx mat2_trace(const Mat2c& a) {
    return a[0] + a[3];
}

double mat2_max_abs(const Mat2c& a) {
    return std::max(std::max(std::abs(a[0]), std::abs(a[1])),
                    std::max(std::abs(a[2]), std::abs(a[3])));
}

}  // namespace lgsim
