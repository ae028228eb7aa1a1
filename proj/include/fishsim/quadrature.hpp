#ifndef FISHSIM_QUADRATURE_HPP
#define FISHSIM_QUADRATURE_HPP

#include "fishsim/coefficient.hpp"

#include <cstddef>
#include <functional>

namespace fishsim {

/// Composite Simpson rule with the given number of panels (two subintervals
/// per panel). Exact for cubics; returns 0 when b <= a.
double simpson(const std::function<double(double)>& f, double a, double b, int panels);

struct LaggedSupResult {
    /// sup over the t-grid of integral_{theta(t)}^{t} f(s) ds.
    double value = 0.0;
    /// First grid t attaining the sup.
    double argmax = 0.0;
    /// Richardson estimate at the argmax: |I_2p - I_p| / 15.
    double error_estimate = 0.0;
};

/** Supremum over one period of the lagged integral integral_{theta(t)}^{t} f.
 *
 * The scan grid is closed: grid_points samples spanning [0, period]
 * inclusive, spacing period/(grid_points-1). Each integral uses composite
 * Simpson with the given panel count; the panel count is doubled once at the
 * argmax for the error estimate.
 *
 * jobs: 0 runs the parallel kernel with the runtime's thread count, 1 forces
 * the serial reference path, n > 1 caps the team at n threads. The result is
 * identical on every path (grid values are computed independently and
 * reduced in index order). */
LaggedSupResult lagged_integral_sup_detail(const std::function<double(double)>& f,
                                           const DelaySpec& delay, double period,
                                           std::size_t grid_points = 2048,
                                           int panels = 256, int jobs = 0);

LaggedSupResult lagged_integral_sup_detail(const CoefficientSpec& f, const DelaySpec& delay,
                                           double period, std::size_t grid_points = 2048,
                                           int panels = 256, int jobs = 0);

/// Value-only convenience overloads.
double lagged_integral_sup(const CoefficientSpec& f, const DelaySpec& delay, double period);
double lagged_integral_sup(const std::function<double(double)>& f, const DelaySpec& delay,
                           double period);

/// Serial loop kept as the reference implementation for the parallel kernel.
LaggedSupResult lagged_integral_sup_serial(const std::function<double(double)>& f,
                                           const DelaySpec& delay, double period,
                                           std::size_t grid_points = 2048, int panels = 256);

} // namespace fishsim

#endif
