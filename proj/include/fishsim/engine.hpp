#ifndef FISHSIM_ENGINE_HPP
#define FISHSIM_ENGINE_HPP

#include "fishsim/model.hpp"
#include "fishsim/trajectory.hpp"

#include <stdexcept>

namespace fishsim {

/** Step-size and robustness knobs for the method-of-steps integrator. */
struct StepControl {
    /// Nominal step; 0 selects min(lag_min, T)/40 clamped to [1e-4, 0.05].
    double step = 0.0;
    /// Fixed-point tolerance for steps whose delayed argument lands inside
    /// the step being computed (theta(t) close to t).
    double vanishing_lag_tol = 1e-12;
    int vanishing_lag_max_iter = 8;
    /// Number of propagated derivative discontinuities aligned to the mesh:
    /// xi_0 = 0, xi_{k+1} = smallest t with theta(t) = xi_k.
    int breakpoint_depth = 3;

    double effective_step(const DelaySpec& delay, double period) const;
};

/** Integration left the representable range: ln N beyond +/- 700 for the
 * harvesting model (numerical blow-up or extinction), or overflow of a
 * linear comparison run. Carries the offending time. */
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(double t, const std::string& what) : std::runtime_error(what), t_(t) {}
    double time() const { return t_; }

private:
    double t_;
};

/** Integrates the harvesting model on [0, t_end] by the method of steps,
 * advancing x = ln N with classical 4-stage Runge-Kutta. Delayed biomass
 * N(theta(t)) comes from the history for theta(t) < 0 and from dense output
 * otherwise. The returned trajectory is positive everywhere.
 *
 * Throws std::invalid_argument when validate(params, history) fails and
 * BlowUpError when |ln N| exceeds 700. */
Trajectory integrate(const ModelParams& params, const HistorySpec& history, double t_end,
                     const StepControl& control = {});

/** Integrates the linear comparison equation x'(t) = -r(t) x(h(t)) in raw
 * coordinates (no positivity) from the given perturbation history. */
Trajectory integrate_linear(const CoefficientSpec& r, const DelaySpec& delay,
                            const HistorySpec& history, double t_end,
                            const StepControl& control = {});

/// The aligned discontinuity times xi_1 < xi_2 < ... propagated from xi_0 = 0
/// through theta, up to depth levels, truncated at t_end. Exposed for tests.
std::vector<double> propagated_breakpoints(const DelaySpec& delay, double t_end,
                                           int depth, double scan_step);

} // namespace fishsim

#endif
