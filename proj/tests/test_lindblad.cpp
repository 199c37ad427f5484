#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lgsim/bloch.hpp"
#include "lgsim/errors.hpp"
#include "lgsim/lindblad.hpp"
#include "testutil.hpp"

using namespace lgsim;
using lgsim_test::ParamGen;
using lgsim_test::linspace;

namespace {

SystemParams reference_params() {
    SystemParams p;
    p.omega0 = 0.5;
    p.rabi = 1.0;
    p.gamma0 = 0.05;
    p.beta = 10.0;
    return p;
}

}  // namespace

TEST_CASE("rhs is traceless for arbitrary physical input") {
    ParamGen gen(13);
    for (int i = 0; i < 100; ++i) {
        SystemParams p = gen.next();
        p.squeeze_theta = gen.uniform(0.0, 6.28);  // complex M allowed here
        BlochVector v;
        do {
            v = {gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0),
                 gen.uniform(-1.0, 1.0)};
        } while (v.norm() > 1.0);
        const Mat2c d = lindblad_rhs(density_from_bloch(v), p);
        const double scale = std::max(1.0, derive_rates([&] {
                                          SystemParams q = p;
                                          q.squeeze_theta = 0.0;
                                          return q;
                                      }()).gamma);
        CHECK(std::abs(mat2_trace(d)) < 1e-14 * scale);
        // the derivative of a Hermitian state is Hermitian
        CHECK(hermiticity_error(mat2_add(density_from_bloch(v),
                                         mat2_scale(d, 1e-3))) <
              1e-14 * scale);
    }
}

TEST_CASE("rhs reduces to the driving commutator for gamma0 = 0") {
    SystemParams p = reference_params();
    p.gamma0 = 0.0;
    const BlochVector v{0.2, -0.1, -0.5};
    const Mat2c rho = density_from_bloch(v);
    const Mat2c d = lindblad_rhs(rho, p);
    // d<v>/dt = (0, rabi*v3, -rabi*v2) under pure driving
    const BlochVector dv = bloch_from_density(d);
    CHECK(dv.v1 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(dv.v2 == doctest::Approx(p.rabi * v.v3).epsilon(1e-14));
    CHECK(dv.v3 == doctest::Approx(-p.rabi * v.v2).epsilon(1e-14));
}

TEST_CASE("rhs vanishes on the closed-form stationary state") {
    const SystemParams p = reference_params();
    const DerivedRates r = derive_rates(p);
    const Mat2c rho = density_from_bloch(stationary_state(r, p.rabi).v);
    CHECK(mat2_max_abs(lindblad_rhs(rho, p)) < 1e-10);
}

TEST_CASE("rhs matches the Bloch generator for every Pauli direction") {
    // The density-matrix equation and the 3x3 generator are independent
    // transcriptions of the same dynamics; check G column by column.
    ParamGen gen(15);
    for (int i = 0; i < 50; ++i) {
        const SystemParams p = gen.next();
        const DerivedRates r = derive_rates(p);
        const GeneratorMatrix gm = generator(r, p.rabi);
        for (int axis = 0; axis < 3; ++axis) {
            BlochVector v{0, 0, 0};
            (axis == 0 ? v.v1 : axis == 1 ? v.v2 : v.v3) = 0.5;
            const BlochVector dv =
                bloch_from_density(lindblad_rhs(density_from_bloch(v), p));
            const Vec3 expect = mat3_apply(gm.g, v.to_vec3());
            const double scale = std::max(1.0, r.gamma);
            CHECK(std::abs(dv.v1 - (expect[0] + gm.m[0])) < 1e-13 * scale);
            CHECK(std::abs(dv.v2 - (expect[1] + gm.m[1])) < 1e-13 * scale);
            CHECK(std::abs(dv.v3 - (expect[2] + gm.m[2])) < 1e-13 * scale);
        }
    }
}

TEST_CASE("integration reproduces the Rabi flop") {
    SystemParams p = reference_params();
    p.gamma0 = 0.0;
    const double t_end = std::numbers::pi / p.rabi;
    const std::vector<double> grid = {t_end};
    const Trajectory traj = integrate(ground_density(), p, t_end, grid);
    CHECK(traj.samples.size() == 1);
    CHECK(traj.samples[0].rho[0].real() ==
          doctest::Approx(1.0).epsilon(1e-8));  // fully excited
}

TEST_CASE("detailed balance fixed point without driving") {
    SystemParams p;
    p.omega0 = 0.5;
    p.rabi = 1e-12;  // effectively undriven
    p.gamma0 = 0.5;
    p.beta = 1.0;
    const DerivedRates r = derive_rates(p);
    const std::vector<double> grid = {80.0};
    const Trajectory traj = integrate(excited_density(), p, 80.0, grid);
    const double pe = traj.samples.back().rho[0].real();
    CHECK(pe == doctest::Approx(r.n / (2.0 * r.n + 1.0)).epsilon(1e-7));
}

TEST_CASE("t_end = 0 yields only the initial state") {
    const SystemParams p = reference_params();
    const Trajectory traj = integrate(ground_density(), p, 0.0, {});
    CHECK(traj.samples.size() == 1);
    CHECK(traj.samples[0].t == 0.0);
    CHECK(traj.samples[0].rho == ground_density());
}

TEST_CASE("integration validates its inputs") {
    const SystemParams p = reference_params();
    Mat2c bad = ground_density();
    bad[0] = cplx(0.4, 0.0);  // trace 1.4
    CHECK_THROWS_AS(integrate(bad, p, 1.0, std::array{1.0}), PhysicsError);

    const std::vector<double> decreasing = {1.0, 0.5};
    CHECK_THROWS_AS(integrate(ground_density(), p, 2.0, decreasing),
                    InvalidParams);
    const std::vector<double> outside = {3.0};
    CHECK_THROWS_AS(integrate(ground_density(), p, 2.0, outside),
                    InvalidParams);
    IntegratorOptions opts;
    opts.rtol = -1.0;
    CHECK_THROWS_AS(integrate(ground_density(), p, 1.0, std::array{1.0}, opts),
                    InvalidParams);
}

TEST_CASE("halving tolerances changes observables below the coarse tolerance") {
    ParamGen gen(19);
    const std::vector<double> ts = linspace(0.5, 15.0, 8);
    for (int i = 0; i < 5; ++i) {
        const SystemParams p = gen.next_mild();
        IntegratorOptions coarse;
        coarse.rtol = 1e-8;
        coarse.atol = 1e-10;
        IntegratorOptions fine;
        fine.rtol = 5e-9;
        fine.atol = 5e-11;
        const Trajectory a = integrate(ground_density(), p, 15.0, ts, coarse);
        const Trajectory b = integrate(ground_density(), p, 15.0, ts, fine);
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const double diff = std::abs(a.samples[k].rho[3].real() -
                                         b.samples[k].rho[3].real());
            CHECK(diff < coarse.rtol);
        }
    }
}

TEST_CASE("trajectories stay physical, including nonzero squeezing phase") {
    ParamGen gen(23);
    const std::vector<double> ts = linspace(0.25, 20.0, 40);
    for (int i = 0; i < 12; ++i) {
        SystemParams p = gen.next_mild();
        p.squeeze_theta = gen.uniform(0.0, 6.28);
        const Trajectory traj = integrate(ground_density(), p, 20.0, ts);
        CHECK(traj.samples.size() == ts.size());
        CHECK(traj.stats.max_trace_error <= 1e-12);
        CHECK(traj.stats.max_hermiticity_error <= 1e-12);
        CHECK(traj.stats.min_eigenvalue >= -1e-10);
        for (std::size_t k = 1; k < traj.samples.size(); ++k)
            CHECK(traj.samples[k].t > traj.samples[k - 1].t);
    }
}

TEST_CASE("integrated dynamics matches the closed form") {
    ParamGen gen(27);
    const std::vector<double> ts = linspace(0.0, 20.0, 50);
    IntegratorOptions opts;  // rtol 1e-10
    for (int i = 0; i < 10; ++i) {
        const SystemParams p = gen.next_mild();
        const DerivedRates r = derive_rates(p);
        const Trajectory traj = integrate(ground_density(), p, 20.0, ts, opts);
        const double tol = std::max(1e-8, 10.0 * opts.rtol);
        for (const auto& s : traj.samples) {
            const double cf = ground_probability(r, p.rabi, s.t);
            CHECK(std::abs(ground_population(s.rho) - cf) < tol);
        }
    }
}

TEST_CASE("two-time correlator") {
    const MeasurementPair pair = MeasurementPair::sharp();
    SUBCASE("zero lag gives 1 for any preparation") {
        const SystemParams p = reference_params();
        for (const Mat2c& prep :
             {ground_density(), excited_density(),
              density_from_bloch(BlochVector{0.6, 0.0, 0.3})}) {
            const std::vector<double> lags = {0.0};
            const auto c = two_time_correlation(prep, p, lags, pair);
            CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("ground preparation reduces to 2 p_g - 1") {
        const SystemParams p = reference_params();
        const DerivedRates r = derive_rates(p);
        const std::vector<double> lags = linspace(0.2, 12.0, 25);
        const auto c = two_time_correlation(ground_density(), p, lags, pair);
        for (std::size_t k = 0; k < lags.size(); ++k) {
            const double expect =
                2.0 * ground_probability(r, p.rabi, lags[k]) - 1.0;
            CHECK(std::abs(c[k] - expect) < 1e-8);
        }
    }
    SUBCASE("closed system gives cos(rabi t)") {
        SystemParams p = reference_params();
        p.gamma0 = 0.0;
        const std::vector<double> lags = linspace(0.1, 6.0, 13);
        const auto c = two_time_correlation(ground_density(), p, lags, pair);
        for (std::size_t k = 0; k < lags.size(); ++k)
            CHECK(std::abs(c[k] - std::cos(lags[k])) < 1e-8);
    }
    SUBCASE("mixed preparation keeps both branches") {
        // prep with p_g = 0.25: both collapse branches evolve
        const SystemParams p = reference_params();
        const DerivedRates r = derive_rates(p);
        const Mat2c prep = density_from_bloch(BlochVector{0.0, 0.0, 0.5});
        const std::vector<double> lags = {1.3};
        const auto c = two_time_correlation(prep, p, lags, pair);
        const double mg = -evolve(BlochVector::ground(), r, p.rabi, 1.3).v3;
        const double me = -evolve(BlochVector::excited(), r, p.rabi, 1.3).v3;
        CHECK(c[0] == doctest::Approx(0.25 * mg - 0.75 * me).epsilon(1e-9));
    }
}
