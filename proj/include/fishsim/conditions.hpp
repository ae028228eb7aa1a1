#ifndef FISHSIM_CONDITIONS_HPP
#define FISHSIM_CONDITIONS_HPP

#include "fishsim/model.hpp"
#include "fishsim/report.hpp"

namespace fishsim {

/** Premises for global existence and persistence of positive solutions:
 * a(t) > b(t) on the grid, plus the (finite) lagged-integral suprema of
 * a - b and b, recorded with their quadrature error estimates.
 *
 * Entries: persistence.a_gt_b, persistence.sup_integral_a_minus_b,
 * persistence.sup_integral_b. */
ConditionReport check_persistence(const ModelParams& params, int jobs = 0);

/** Existence of a positive periodic solution via the bounds on
 * C(t) = (a(t)/b(t) - 1) K(t)^gamma: C staying above 1 everywhere or below 1
 * everywhere each suffices.
 *
 * Entries: periodic.a_ge_b (non-strict premise), periodic.inf_above_one,
 * periodic.sup_below_one. The two bound entries carry independent verdicts;
 * aggregation into "at least one" happens in check_global_attraction. */
ConditionReport check_periodic_existence(const ModelParams& params);

/** The 3/2 criterion for decay of x'(t) = -r(t) x(theta(t)): r bounded away
 * from zero and sup of the lagged integral of r below 3/2.
 *
 * Entries: decay.r_inf_positive, decay.sup_integral, decay.integral_error. */
ConditionReport check_three_halves(const CoefficientSpec& r, const DelaySpec& delay,
                                   int jobs = 0);

/** Sufficient conditions for the periodic solution to attract every positive
 * solution: the persistence premises, at least one of the periodic-existence
 * bounds, a bounded away from zero, and gamma times the lagged-integral
 * supremum of a below 6.
 *
 * Adds: periodic.inf (recorded), periodic.sup (recorded),
 * periodic.either_bound (the disjunction), attraction.a_inf_positive,
 * attraction.gamma_sup_integral, attraction.integral_error. */
ConditionReport check_global_attraction(const ModelParams& params, int jobs = 0);

/** The proportional-coefficient specialization: a > b, the equilibrium level
 * (a/b - 1) K^gamma away from 1, and gamma*a times the lagged-integral
 * supremum of r below 6.
 *
 * Entries: proportional.a_gt_b, proportional.distance_from_unity,
 * proportional.gamma_a_sup_integral, proportional.sup_integral_r,
 * proportional.integral_error. */
ConditionReport check_global_attraction(const ProportionalParams& params, int jobs = 0);

/** Local asymptotic stability of the positive equilibrium in the
 * proportional model: a > b, r bounded away from zero, and the linearized
 * coefficient gamma*(a-b)*b/a times the lagged-integral supremum of r below
 * 3/2.
 *
 * Entries: local.a_gt_b, local.r_inf_positive, local.coefficient (recorded),
 * local.coefficient_sup_integral, local.integral_error. */
ConditionReport check_local_stability(const ProportionalParams& params, int jobs = 0);

} // namespace fishsim

#endif
