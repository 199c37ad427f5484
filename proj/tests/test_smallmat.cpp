#include <doctest.h>

#include <cmath>

#include "lgsim/errors.hpp"
#include "lgsim/smallmat.hpp"
#include "testutil.hpp"

using namespace lgsim;

TEST_CASE("mat3_solve recovers the identity") {
    const Mat3 a = {2, 1, 0, -1, 3, 2, 0, 1, 4};
    const Mat3 x = mat3_solve(a, mat3_identity());
    const Mat3 ax = mat3_mul(a, x);
    CHECK(mat3_max_abs_diff(ax, mat3_identity()) < 1e-14);
}

TEST_CASE("mat3_solve rejects a singular matrix") {
    const Mat3 a = {1, 2, 3, 2, 4, 6, 0, 1, 1};
    CHECK_THROWS_AS(mat3_solve(a, mat3_identity()), PhysicsError);
}

TEST_CASE("expm of zero and of a diagonal matrix") {
    CHECK(mat3_max_abs_diff(mat3_expm(Mat3{}), mat3_identity()) == 0.0);
    const Mat3 d = {-1, 0, 0, 0, -2, 0, 0, 0, 3};
    const Mat3 e = mat3_expm(d);
    CHECK(e[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(e[4] == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(e[8] == doctest::Approx(std::exp(3.0)).epsilon(1e-14));
    CHECK(std::abs(e[1]) + std::abs(e[2]) + std::abs(e[3]) == 0.0);
}

TEST_CASE("expm of a rotation generator is the rotation matrix") {
    const double th = 1.234;
    const Mat3 g = {0, 0, 0, 0, 0, th, 0, -th, 0};
    const Mat3 e = mat3_expm(g);
    CHECK(e[4] == doctest::Approx(std::cos(th)).epsilon(1e-14));
    CHECK(e[5] == doctest::Approx(std::sin(th)).epsilon(1e-14));
    CHECK(e[7] == doctest::Approx(-std::sin(th)).epsilon(1e-14));
    CHECK(e[8] == doctest::Approx(std::cos(th)).epsilon(1e-14));
    CHECK(e[0] == doctest::Approx(1.0));
}

TEST_CASE("expm semigroup property on random contraction matrices") {
    lgsim_test::ParamGen gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        Mat3 a;
        for (auto& v : a) v = gen.uniform(-2.0, 2.0);
        // make it diagonally dominant negative so powers stay bounded
        a[0] -= 5.0;
        a[4] -= 5.0;
        a[8] -= 5.0;
        const Mat3 e1 = mat3_expm(a);
        const Mat3 ehalf = mat3_expm(mat3_scale(a, 0.5));
        CHECK(mat3_max_abs_diff(e1, mat3_mul(ehalf, ehalf)) < 1e-13);
    }
}

TEST_CASE("expm against the Taylor series for a small-norm matrix") {
    const Mat3 a = {0.01, 0.02, -0.03, 0.005, -0.01, 0.02, 0.0, 0.01, -0.02};
    Mat3 taylor = mat3_identity();
    Mat3 term = mat3_identity();
    for (int k = 1; k <= 20; ++k) {
        term = mat3_scale(mat3_mul(term, a), 1.0 / k);
        taylor = mat3_add(taylor, term);
    }
    CHECK(mat3_max_abs_diff(mat3_expm(a), taylor) < 1e-15);
}

TEST_CASE("2x2 complex helpers") {
    const Mat2c a = {cplx(1, 2), cplx(0, -1), cplx(3, 0), cplx(-1, 1)};
    const Mat2c b = {cplx(0, 1), cplx(2, 0), cplx(1, -1), cplx(0, 0)};
    const Mat2c ab = mat2_mul(a, b);
    // (1+2i)(i) + (-i)(1-i) = i - 2 - i - 1 = -3
    CHECK(ab[0] == cplx(-3, 0));
    CHECK(mat2_trace(a) == cplx(0, 3));
    const Mat2c ad = mat2_adjoint(a);
    CHECK(ad[1] == std::conj(a[2]));
    CHECK(ad[2] == std::conj(a[1]));
}
