#include <doctest.h>

#include <cmath>

#include "lgsim/batch.hpp"
#include "testutil.hpp"

using namespace lgsim;
using lgsim_test::ParamGen;
using lgsim_test::linspace;

namespace {

std::vector<SystemParams> small_grid() {
    std::vector<SystemParams> sets;
    ParamGen gen(81);
    for (int i = 0; i < 12; ++i) sets.push_back(gen.next_mild());
    return sets;
}

}  // namespace

TEST_CASE("parallel and serial grid comparisons are bitwise identical") {
    const std::vector<SystemParams> sets = small_grid();
    const std::vector<double> ts = linspace(0.0, 20.0, 25);
    IntegratorOptions opts;
    const OracleComparison a =
        compare_oracle_analytic(sets, ts, opts, Exec::Parallel);
    const OracleComparison b =
        compare_oracle_analytic(sets, ts, opts, Exec::Serial);
    CHECK(a.max_abs_err == b.max_abs_err);
    CHECK(a.worst_set == b.worst_set);
    CHECK(a.worst_t == b.worst_t);
    CHECK(a.per_set_err == b.per_set_err);
    CHECK(a.stats.accepted == b.stats.accepted);
    CHECK(a.stats.min_eigenvalue == b.stats.min_eigenvalue);
    CHECK(a.max_abs_err < 1e-7);
}

TEST_CASE("parallel and serial K series are bitwise identical") {
    SystemParams p;
    p.omega0 = 0.5;
    p.rabi = 1.0;
    p.gamma0 = 0.05;
    p.beta = 10.0;
    const DerivedRates r = derive_rates(p);
    const std::vector<double> ts = linspace(0.0, 25.0, 4001);
    for (LGWhich which : {LGWhich::KPlus, LGWhich::KMinus, LGWhich::K3}) {
        const auto a =
            lg_parameter_series(r, 1.0, ts, which, 1.0, Exec::Parallel);
        const auto b =
            lg_parameter_series(r, 1.0, ts, which, 1.0, Exec::Serial);
        CHECK(a == b);
    }
}

TEST_CASE("parallel and serial sweeps agree") {
    std::vector<SweepPoint> points;
    for (double ratio : {0.001, 0.01, 0.05, 0.5, 5.0}) {
        SystemParams p;
        p.omega0 = 0.5;
        p.rabi = 1.0;
        p.gamma0 = ratio;
        p.beta = 10.0;
        points.push_back({p, 1.0});
    }
    ScanOptions scan;
    scan.n_samples = 801;
    const auto a =
        sweep_violation(points, 0.0, 25.0, LGWhich::KPlus, scan, Exec::Parallel);
    const auto b =
        sweep_violation(points, 0.0, 25.0, LGWhich::KPlus, scan, Exec::Serial);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].k_max == b[i].k_max);
        CHECK(a[i].t_at_max == b[i].t_at_max);
        CHECK(a[i].total_violation_time == b[i].total_violation_time);
        CHECK(a[i].violation_intervals.size() ==
              b[i].violation_intervals.size());
    }
    // weaker damping violates at least as hard
    for (std::size_t i = 1; i < a.size(); ++i)
        CHECK(a[i - 1].k_max >= a[i].k_max - 1e-12);
}

TEST_CASE("exceptions from worker loops surface to the caller") {
    std::vector<SweepPoint> points(3);
    points[1].params.rabi = -1.0;  // invalid
    ScanOptions scan;
    scan.n_samples = 51;
    CHECK_THROWS_AS(sweep_violation(points, 0.0, 5.0, LGWhich::KPlus, scan,
                                    Exec::Parallel),
                    InvalidParams);
}
