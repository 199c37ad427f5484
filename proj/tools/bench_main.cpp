// Timing comparison of the serial reference loops against the OpenMP
// kernels: the closed-form-vs-integrator grid and the violation-scan
// sampling. Prints one row per kernel with the speedup.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lgsim/batch.hpp"

using namespace lgsim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::vector<SystemParams> bench_sets(int n) {
    std::vector<SystemParams> sets;
    const double ratios[] = {0.001, 0.01, 0.05, 0.5, 1.0, 5.0};
    const double betas[] = {0.5, 1.0, 10.0, 100.0};
    const double squeezes[] = {0.0, 0.5, 1.0, 2.0};
    int i = 0;
    while (static_cast<int>(sets.size()) < n) {
        SystemParams p;
        p.omega0 = 0.5;
        p.rabi = 1.0;
        p.gamma0 = ratios[i % 6];
        p.beta = betas[(i / 6) % 4];
        p.squeeze_s = squeezes[(i / 24) % 4];
        sets.push_back(p);
        ++i;
    }
    return sets;
}

std::vector<double> grid(double hi, int n) {
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = hi * i / (n - 1);
    return ts;
}

}  // namespace

int main(int argc, char** argv) {
    int n_sets = 64;
    int n_scan = 40001;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--sets") n_sets = std::atoi(argv[i + 1]);
        if (flag == "--scan-points") n_scan = std::atoi(argv[i + 1]);
    }
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    const std::vector<SystemParams> sets = bench_sets(n_sets);
    const std::vector<double> ts = grid(20.0, 50);
    IntegratorOptions opts;

    auto t0 = std::chrono::steady_clock::now();
    const OracleComparison serial =
        compare_oracle_analytic(sets, ts, opts, Exec::Serial);
    const double grid_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const OracleComparison parallel =
        compare_oracle_analytic(sets, ts, opts, Exec::Parallel);
    const double grid_parallel = seconds_since(t0);

    std::printf("integrator grid   (%4d sets): serial %8.3f s | parallel %8.3f s"
                " | speedup %.2fx | max err %.2e\n",
                n_sets, grid_serial, grid_parallel,
                grid_serial / grid_parallel, serial.max_abs_err);
    if (serial.max_abs_err != parallel.max_abs_err)
        std::printf("WARNING: serial/parallel grid results differ\n");

    SystemParams p;
    p.omega0 = 0.5;
    p.rabi = 1.0;
    p.gamma0 = 0.05;
    p.beta = 10.0;
    const DerivedRates rates = derive_rates(p);
    const std::vector<double> scan_ts = grid(25.0, n_scan);

    t0 = std::chrono::steady_clock::now();
    const std::vector<double> ks_serial = lg_parameter_series(
        rates, p.rabi, scan_ts, LGWhich::KPlus, 1.0, Exec::Serial);
    const double scan_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const std::vector<double> ks_parallel = lg_parameter_series(
        rates, p.rabi, scan_ts, LGWhich::KPlus, 1.0, Exec::Parallel);
    const double scan_parallel = seconds_since(t0);

    std::printf("violation sampling (%d pts): serial %8.3f s | parallel %8.3f s"
                " | speedup %.2fx\n",
                n_scan, scan_serial, scan_parallel,
                scan_serial / scan_parallel);
    if (ks_serial != ks_parallel)
        std::printf("WARNING: serial/parallel scan results differ\n");
    return 0;
}
