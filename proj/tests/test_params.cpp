#include <doctest.h>

#include <cmath>
#include <limits>

#include "lgsim/errors.hpp"
#include "lgsim/params.hpp"
#include "testutil.hpp"

using namespace lgsim;

TEST_CASE("planck occupation") {
    // zero-temperature limit
    CHECK(planck_occupation(0.5, std::numeric_limits<double>::infinity()) ==
          0.0);
    // 1/(e^5 - 1), evaluated independently at 50-digit precision
    CHECK(planck_occupation(0.5, 10.0) ==
          doctest::Approx(6.7836549063042311e-03).epsilon(1e-14));
    // near-classical limit, n_th ~ 1/(beta omega0) - 1/2
    CHECK(planck_occupation(0.5, 1e-3) ==
          doctest::Approx(1.9995000416666665e+03).epsilon(1e-14));

    CHECK_THROWS_AS(planck_occupation(0.0, 1.0), InvalidParams);
    CHECK_THROWS_AS(planck_occupation(-0.5, 1.0), InvalidParams);
    CHECK_THROWS_AS(planck_occupation(0.5, 0.0), InvalidParams);
    CHECK_THROWS_AS(planck_occupation(0.5, -2.0), InvalidParams);
    // very large finite beta saturates to zero instead of overflowing
    CHECK(planck_occupation(0.5, 1e6) == 0.0);
}

TEST_CASE("derive_rates collapses correctly without squeezing") {
    SystemParams p;
    p.omega0 = 0.5;
    p.rabi = 1.0;
    p.gamma0 = 0.05;
    p.zero_temperature = true;
    const DerivedRates r = derive_rates(p);
    CHECK(r.n_th == 0.0);
    CHECK(r.n == 0.0);
    CHECK(r.m_param == 0.0);
    CHECK(r.gamma == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(r.gamma_s == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(r.mu_s.imag() == 0.0);
    CHECK(r.mu_s.real() ==
          doctest::Approx(0.99992187194800375).epsilon(1e-14));
}

TEST_CASE("derive_rates with squeezing at zero temperature") {
    SystemParams p;
    p.omega0 = 0.5;
    p.rabi = 1.0;
    p.gamma0 = 0.05;
    p.zero_temperature = true;
    p.squeeze_s = 1.0;
    const DerivedRates r = derive_rates(p);
    // sinh^2(1) and -cosh(1) sinh(1), high-precision reference values
    CHECK(r.n == doctest::Approx(1.3810978455418157).epsilon(1e-14));
    CHECK(r.m_param == doctest::Approx(-1.8134302039235094).epsilon(1e-14));
}

TEST_CASE("closed-system limit gamma0 = 0") {
    SystemParams p;
    p.omega0 = 0.5;
    p.rabi = 1.3;
    p.gamma0 = 0.0;
    p.beta = 2.0;
    p.squeeze_s = 2.0;
    const DerivedRates r = derive_rates(p);
    CHECK(r.gamma == 0.0);
    CHECK(r.gamma_s == 0.0);
    CHECK(r.mu_s == cplx(1.3, 0.0));
}

TEST_CASE("theta handling: closed form rejects, integrator path accepts") {
    SystemParams p;
    p.omega0 = 0.5;
    p.rabi = 1.0;
    p.gamma0 = 0.05;
    p.squeeze_s = 1.0;
    p.squeeze_theta = 0.7;
    CHECK_THROWS_AS(derive_rates(p), UnsupportedTheta);
    const BathMoments bm = bath_moments(p);
    CHECK(std::abs(bm.m) > 0.0);
    CHECK(bm.m.imag() != 0.0);
}

TEST_CASE("parameter validation") {
    SystemParams p;
    p.rabi = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p.rabi = 1.0;
    p.gamma0 = -0.1;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p.gamma0 = 0.1;
    p.beta = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p.zero_temperature = true;  // beta ignored once the flag is set
    CHECK_NOTHROW(p.validate());
    p.squeeze_s = -0.5;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
}

TEST_CASE("regime classification") {
    SystemParams p;
    p.omega0 = 0.5;
    p.rabi = 1.0;
    p.gamma0 = 0.0;
    p.beta = 10.0;
    CHECK(classify_regime(derive_rates(p), p.rabi) == Regime::Underdamped);

    p.gamma0 = 5.0;  // gamma_s/4 ~ 1.267 > 1
    const DerivedRates r = derive_rates(p);
    CHECK(r.gamma_s / 4.0 == doctest::Approx(1.2669591372657607).epsilon(1e-13));
    CHECK(classify_regime(r, p.rabi) == Regime::Overdamped);
    CHECK(r.mu_s.real() == 0.0);
    CHECK(r.mu_s.imag() == doctest::Approx(0.7779366654819663).epsilon(1e-13));

    // exact boundary: rabi = gamma_s/4
    DerivedRates b = r;
    b.gamma_s = 4.0;
    CHECK(classify_regime(b, 1.0) == Regime::Critical);
}

TEST_CASE("mu_s is real xor imaginary and closes the square identity") {
    lgsim_test::ParamGen gen(7);
    for (int i = 0; i < 300; ++i) {
        const SystemParams p = gen.next();
        const DerivedRates r = derive_rates(p);
        const bool real_part = r.mu_s.real() != 0.0;
        const bool imag_part = r.mu_s.imag() != 0.0;
        CHECK_FALSE((real_part && imag_part));
        // mu_s^2 + (gamma_s/4)^2 = rabi^2 to machine precision
        const double lhs =
            (r.mu_s * r.mu_s).real() + (r.gamma_s / 4.0) * (r.gamma_s / 4.0);
        CHECK(lhs == doctest::Approx(p.rabi * p.rabi)
                         .epsilon(1e-14));
        CHECK(r.n >= r.n_th);
        CHECK(r.m_param <= 0.0);
    }
}

TEST_CASE("derive_rates is deterministic (bitwise)") {
    lgsim_test::ParamGen gen(11);
    const SystemParams p = gen.next();
    const DerivedRates a = derive_rates(p);
    const DerivedRates b = derive_rates(p);
    CHECK(a.n == b.n);
    CHECK(a.m_param == b.m_param);
    CHECK(a.gamma == b.gamma);
    CHECK(a.gamma_s == b.gamma_s);
    CHECK(a.mu_s == b.mu_s);
}

TEST_CASE("dressed occupation is monotone in n_th and s") {
    // directly from n = n_th cosh(2s) + sinh^2(s)
    SystemParams p;
    p.omega0 = 0.5;
    p.rabi = 1.0;
    p.gamma0 = 0.1;
    double prev = -1.0;
    for (double beta : {100.0, 10.0, 1.0, 0.1, 1e-3}) {  // n_th increasing
        p.beta = beta;
        p.squeeze_s = 0.7;
        const double n = derive_rates(p).n;
        CHECK(n >= prev);
        prev = n;
    }
    prev = -1.0;
    for (double s : {0.0, 0.5, 1.0, 2.0, 3.5}) {
        p.beta = 1.0;
        p.squeeze_s = s;
        const double n = derive_rates(p).n;
        CHECK(n >= prev);
        prev = n;
    }
}
