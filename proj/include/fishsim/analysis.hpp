#ifndef FISHSIM_ANALYSIS_HPP
#define FISHSIM_ANALYSIS_HPP

#include "fishsim/engine.hpp"
#include "fishsim/model.hpp"
#include "fishsim/report.hpp"
#include "fishsim/trajectory.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fishsim {

/** One period of the attracting periodic solution, cut out after a
 * transient. orbit spans exactly [start, start + period]; residual is the
 * sup over that window of |N(t) - N(t - period)|, sampled densely. */
struct PeriodicOrbit {
    Trajectory orbit;
    double period = 0.0;
    double residual = 0.0;
    double transient_used = 0.0;
    /// residual < tol at return time.
    bool converged = false;
};

/** How fast two runs (or one run and its limit) approach each other.
 *
 * sup_diff_last_period is the sup of the compared magnitude over the final
 * period. decay_rate_estimate is per unit time, positive when the magnitude
 * decays; it is the least-squares slope of ln(per-period sup) over the last
 * five periods, divided by -period. With fewer than five of those periods
 * above the rounding-noise floor the rate is not estimable and is NaN. */
struct ConvergenceReport {
    std::size_t first = 0;
    std::size_t second = 0;
    double sup_diff_last_period = 0.0;
    double decay_rate_estimate = 0.0;
    bool rate_estimable = false;
    bool converged = false;
};

/// Linear and nonlinear legs of the local-stability experiment.
struct LocalStabilityReport {
    ConvergenceReport linear;
    ConvergenceReport nonlinear;
    /// Equilibrium the nonlinear leg is measured against.
    double equilibrium_value = 0.0;
};

struct PersistenceBoundsResult {
    double alpha = 0.0;
    double beta = 0.0;
};

/** Integrates from a constant positive guess (default: geometric mean of the
 * carrying-capacity grid values) for transient_periods periods plus one
 * more, and returns that final period as the orbit.
 *
 * Preconditions: the global-attraction conditions should hold; when they do
 * not and warn_and_proceed is false this throws std::invalid_argument.
 * Overflow during the transient propagates as BlowUpError. A residual at or
 * above tol is reported via converged = false, not an error. */
PeriodicOrbit find_periodic_solution(const ModelParams& params, const StepControl& control = {},
                                     std::size_t transient_periods = 40, double tol = 1e-6,
                                     std::optional<double> guess = std::nullopt,
                                     bool warn_and_proceed = false);

/** Integrates every history over horizon_periods periods and compares each
 * pair: sup |N_i - N_j| over the final period plus a decay fit. Pairs are
 * reported in index order (i, j), i < j. Requires at least two histories.
 * Overflow propagates as BlowUpError naming the run. */
std::vector<ConvergenceReport> verify_attraction(const ModelParams& params,
                                                 const std::vector<HistorySpec>& histories,
                                                 const StepControl& control = {},
                                                 std::size_t horizon_periods = 60,
                                                 double tol = 1e-4);

/** Drives the linearized equation x'(t) = -c r(t) x(theta(t)) with
 * c = gamma (a-b) b / a from constant history x0, and the full model from
 * the equilibrium displaced by 1%, both over [0, horizon].
 *
 * The linear leg compares |x| against 0 (converged iff the final-period sup
 * is below tol_linear); the nonlinear leg compares |N - N*| against 0
 * (converged iff the final-period sup is below tol_relative * N*). */
LocalStabilityReport verify_local_stability(const ProportionalParams& params, double x0,
                                            const StepControl& control = {},
                                            double horizon = 80.0, double tol_linear = 1e-4,
                                            double tol_relative = 1e-3,
                                            bool warn_and_proceed = false);

/// Min and max of the trajectory over [discard, end], sampled at 10^4
/// dense-output points. Throws std::invalid_argument when discard >= end.
PersistenceBoundsResult persistence_bounds(const Trajectory& traj, double discard);

enum class SweepAxisKind { gamma, lag, amplitude };

struct SweepAxis {
    SweepAxisKind kind = SweepAxisKind::gamma;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 1;

    double value(std::size_t idx) const;
};

struct SweepCell {
    std::size_t i = 0;
    std::size_t j = 0;
    double value1 = 0.0;
    double value2 = 0.0;
    /// gamma * sup lagged integral of a, against 6.
    double attraction_quantity = 0.0;
    Verdict attraction_verdict = Verdict::inconclusive;
    /// Overall verdict of the full attraction report (all premises).
    Verdict attraction_overall = Verdict::inconclusive;
    /// gamma * a * sup lagged integral of r, against 6; NaN for a general base.
    double proportional_quantity = 0.0;
    Verdict proportional_verdict = Verdict::inconclusive;
    /// Linearized coefficient times sup lagged integral of r, against 3/2;
    /// NaN for a general base.
    double local_quantity = 0.0;
    Verdict local_verdict = Verdict::inconclusive;
    bool has_proportional = false;
    /// converged | not-converged | overflow | error.
    std::string outcome;
    std::string detail;
    double sup_diff = 0.0;
};

struct SweepOptions {
    std::size_t horizon_periods = 60;
    double tol = 1e-4;
    StepControl control{};
    int jobs = 0;
};

struct SweepResult {
    SweepAxis axis1, axis2;
    /// Row-major: cell (i, j) at index i * axis2.count + j.
    std::vector<SweepCell> cells;

    std::string to_csv() const;
};

/** Evaluates the stability conditions and an empirical two-history
 * convergence experiment on every grid cell. Cells run independently (in
 * parallel when jobs != 1) and are merged by grid index, so the table is
 * deterministic; per-cell failures are recorded in the cell's outcome and
 * never abort the sweep. */
SweepResult sweep(const ProportionalParams& base, const SweepAxis& axis1, const SweepAxis& axis2,
                  const SweepOptions& opts = {});
SweepResult sweep(const ModelParams& base, const SweepAxis& axis1, const SweepAxis& axis2,
                  const SweepOptions& opts = {});

const char* to_string(SweepAxisKind k);

} // namespace fishsim

#endif
