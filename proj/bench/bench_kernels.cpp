// Timing comparison of the parallel kernels against their serial reference
// paths. Not a test: numbers land on stdout for eyeballing.
//
//   ./bench_kernels [max_jobs]

#include "fishsim/analysis.hpp"
#include "fishsim/quadrature.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace fishsim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void print_row(const std::string& label, double serial, double elapsed, double check) {
    std::cout << "  " << std::left << std::setw(22) << label << std::right << std::fixed
              << std::setprecision(4) << std::setw(9) << elapsed << " s   speedup "
              << std::setprecision(2) << std::setw(6) << serial / elapsed << "   checksum "
              << std::setprecision(12) << check << "\n";
}

} // namespace

int main(int argc, char** argv) {
    int max_jobs = 8;
#ifdef _OPENMP
    max_jobs = omp_get_max_threads();
#endif
    if (argc > 1)
        max_jobs = std::atoi(argv[1]);
    if (max_jobs < 1)
        max_jobs = 1;

    // A deliberately oscillatory integrand over a wide grid so each
    // evaluation carries real work.
    auto f = [](double t) { return 2.0 + 0.5 * std::sin(2.0 * M_PI * t) +
                                   0.25 * std::cos(32.0 * M_PI * t); };
    DelaySpec delay = DelaySpec::varying_lag(CoefficientSpec::sinusoid(0.6, 0.3, 1.0));
    const std::size_t grid = 1 << 15;
    const int panels = 512;

    std::cout << "lagged integral sup, grid " << grid << ", panels " << panels << "\n";
    auto t0 = std::chrono::steady_clock::now();
    LaggedSupResult ref = lagged_integral_sup_serial(f, delay, 1.0, grid, panels);
    double serial = seconds_since(t0);
    print_row("serial reference", serial, serial, ref.value);
    int last = 0;
    for (int jobs : {1, 2, 4, max_jobs}) {
        if (jobs > max_jobs || jobs == last)
            continue;
        last = jobs;
        t0 = std::chrono::steady_clock::now();
        LaggedSupResult got = lagged_integral_sup_detail(f, delay, 1.0, grid, panels, jobs);
        double elapsed = seconds_since(t0);
        print_row("parallel jobs " + std::to_string(jobs), serial, elapsed, got.value);
        if (got.value != ref.value || got.argmax != ref.argmax)
            std::cout << "  MISMATCH against the serial reference\n";
    }

    ProportionalParams base(2.0, 1.0, 1.0, 2.0, CoefficientSpec::constant(1.0),
                            DelaySpec::constant_lag(1.0));
    SweepAxis gamma_axis{SweepAxisKind::gamma, 0.5, 6.0, 6};
    SweepAxis lag_axis{SweepAxisKind::lag, 0.1, 2.0, 6};
    SweepOptions opts;
    opts.horizon_periods = 200;

    std::cout << "\nsweep " << gamma_axis.count << "x" << lag_axis.count << ", horizon "
              << opts.horizon_periods << " periods\n";
    opts.jobs = 1;
    t0 = std::chrono::steady_clock::now();
    SweepResult serial_res = sweep(base, gamma_axis, lag_axis, opts);
    double sweep_serial = seconds_since(t0);
    std::cout << "  " << std::left << std::setw(22) << "serial cells" << std::right
              << std::fixed << std::setprecision(4) << std::setw(9) << sweep_serial << " s\n";
    last = 0;
    for (int jobs : {2, 4, max_jobs}) {
        if (jobs > max_jobs || jobs < 2 || jobs == last)
            continue;
        last = jobs;
        opts.jobs = jobs;
        t0 = std::chrono::steady_clock::now();
        SweepResult got = sweep(base, gamma_axis, lag_axis, opts);
        double elapsed = seconds_since(t0);
        std::cout << "  " << std::left << std::setw(22)
                  << ("parallel jobs " + std::to_string(jobs)) << std::right << std::fixed
                  << std::setprecision(4) << std::setw(9) << elapsed << " s   speedup "
                  << std::setprecision(2) << std::setw(6) << sweep_serial / elapsed
                  << (got.to_csv() == serial_res.to_csv() ? "   identical table"
                                                          : "   TABLE MISMATCH")
                  << "\n";
    }
    return 0;
}
