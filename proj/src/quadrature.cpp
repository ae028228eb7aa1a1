#include "fishsim/quadrature.hpp"

#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fishsim {

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    if (!(b > a))
        return 0.0;
    double h = (b - a) / panels;
    double sum = 0.0;
    double left = f(a);
    for (int i = 0; i < panels; ++i) {
        double xl = a + i * h;
        double xr = (i + 1 == panels) ? b : a + (i + 1) * h;
        double mid = f(xl + (xr - xl) / 2.0);
        double right = f(xr);
        sum += (xr - xl) / 6.0 * (left + 4.0 * mid + right);
        left = right;
    }
    return sum;
}

namespace {

double lagged_integral(const std::function<double(double)>& f, const DelaySpec& delay,
                       double t, int panels) {
    return simpson(f, delay.theta(t), t, panels);
}

LaggedSupResult reduce_grid(const std::function<double(double)>& f, const DelaySpec& delay,
                            double period, const std::vector<double>& cell, int panels) {
    std::size_t n = cell.size();
    LaggedSupResult out;
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (cell[i] > cell[best])
            best = i;
    }
    out.value = cell[best];
    out.argmax = n > 1 ? period * best / (n - 1) : 0.0;
    double refined = lagged_integral(f, delay, out.argmax, 2 * panels);
    out.error_estimate = std::abs(refined - out.value) / 15.0;
    return out;
}

} // namespace

LaggedSupResult lagged_integral_sup_serial(const std::function<double(double)>& f,
                                           const DelaySpec& delay, double period,
                                           std::size_t grid_points, int panels) {
    std::vector<double> cell(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        double t = period * i / (grid_points - 1);
        cell[i] = lagged_integral(f, delay, t, panels);
    }
    return reduce_grid(f, delay, period, cell, panels);
}

LaggedSupResult lagged_integral_sup_detail(const std::function<double(double)>& f,
                                           const DelaySpec& delay, double period,
                                           std::size_t grid_points, int panels, int jobs) {
    if (grid_points < 2)
        grid_points = 2;
    if (jobs == 1)
        return lagged_integral_sup_serial(f, delay, period, grid_points, panels);

    std::vector<double> cell(grid_points);
#ifdef _OPENMP
    if (jobs > 1) {
#pragma omp parallel for schedule(static) num_threads(jobs)
        for (long i = 0; i < static_cast<long>(grid_points); ++i) {
            double t = period * i / (grid_points - 1);
            cell[i] = lagged_integral(f, delay, t, panels);
        }
    } else {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(grid_points); ++i) {
            double t = period * i / (grid_points - 1);
            cell[i] = lagged_integral(f, delay, t, panels);
        }
    }
#else
    for (std::size_t i = 0; i < grid_points; ++i) {
        double t = period * i / (grid_points - 1);
        cell[i] = lagged_integral(f, delay, t, panels);
    }
#endif
    return reduce_grid(f, delay, period, cell, panels);
}

LaggedSupResult lagged_integral_sup_detail(const CoefficientSpec& f, const DelaySpec& delay,
                                           double period, std::size_t grid_points, int panels,
                                           int jobs) {
    auto fn = [&f](double t) { return f.eval(t); };
    return lagged_integral_sup_detail(std::function<double(double)>(fn), delay, period,
                                      grid_points, panels, jobs);
}

double lagged_integral_sup(const CoefficientSpec& f, const DelaySpec& delay, double period) {
    return lagged_integral_sup_detail(f, delay, period).value;
}

double lagged_integral_sup(const std::function<double(double)>& f, const DelaySpec& delay,
                           double period) {
    return lagged_integral_sup_detail(f, delay, period).value;
}

} // namespace fishsim
