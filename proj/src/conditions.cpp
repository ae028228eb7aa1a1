#include "fishsim/conditions.hpp"

#include "fishsim/csv.hpp"
#include "fishsim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace fishsim {

namespace {

constexpr std::size_t kGrid = 4096;

struct GridExtrema {
    double min, max;
};

// Extrema of g over the closed grid of n points spanning [0, window].
GridExtrema scan(const std::function<double(double)>& g, double window, std::size_t n = kGrid) {
    GridExtrema e{g(0.0), g(0.0)};
    for (std::size_t i = 1; i < n; ++i) {
        double v = g(window * i / (n - 1));
        e.min = std::min(e.min, v);
        e.max = std::max(e.max, v);
    }
    return e;
}

double ratio_level(const ModelParams& p, double t) {
    return (p.a.eval(t) / p.b.eval(t) - 1.0) * std::pow(p.K.eval(t), p.gamma);
}

} // namespace

ConditionReport check_persistence(const ModelParams& params, int jobs) {
    ConditionReport rep;
    double period = params.effective_period();

    auto diff = scan([&](double t) { return params.a.eval(t) - params.b.eval(t); }, period);
    rep.add_positivity("persistence.a_gt_b", diff.min);

    auto ab = lagged_integral_sup_detail(
        std::function<double(double)>(
            [&](double t) { return params.a.eval(t) - params.b.eval(t); }),
        params.delay, period, 2048, 256, jobs);
    auto bb = lagged_integral_sup_detail(params.b, params.delay, period, 2048, 256, jobs);
    rep.add_recorded("persistence.sup_integral_a_minus_b", ab.value);
    rep.add_recorded("persistence.sup_integral_b", bb.value);
    rep.add_note("persistence quadrature error estimates: " + format_double_shortest(ab.error_estimate) +
                 " (a-b), " + format_double_shortest(bb.error_estimate) + " (b)");
    return rep;
}

ConditionReport check_periodic_existence(const ModelParams& params) {
    ConditionReport rep;
    double period = params.effective_period();

    auto diff = scan([&](double t) { return params.a.eval(t) - params.b.eval(t); }, period);
    rep.add_lower("periodic.a_ge_b", diff.min, 0.0, /*strict=*/false);
    if (std::abs(diff.min) <= 1e-9)
        rep.add_note("a(t) = b(t) somewhere on the grid: the strict persistence premise is "
                     "at its boundary");

    auto level = scan([&](double t) { return ratio_level(params, t); }, period);
    rep.add_lower("periodic.inf_above_one", level.min, 1.0);
    rep.add_upper("periodic.sup_below_one", level.max, 1.0);
    return rep;
}

ConditionReport check_three_halves(const CoefficientSpec& r, const DelaySpec& delay, int jobs) {
    ConditionReport rep;
    double period = r.period() ? *r.period() : 1.0;
    if (!delay.is_constant() && delay.period())
        period = common_period({period, *delay.period()}).value_or(period);

    rep.add_positivity("decay.r_inf_positive", r.grid_min(kGrid));
    auto sup = lagged_integral_sup_detail(r, delay, period, 2048, 256, jobs);
    rep.add_upper("decay.sup_integral", sup.value, 1.5);
    rep.add_recorded("decay.integral_error", sup.error_estimate);
    return rep;
}

ConditionReport check_global_attraction(const ModelParams& params, int jobs) {
    ConditionReport rep = check_persistence(params, jobs);
    double period = params.effective_period();
    if (const auto* premise = rep.find("persistence.a_gt_b");
        premise && std::abs(premise->margin) <= 1e-9)
        rep.add_note("a(t) = b(t) somewhere on the grid; the strict premise is used here");

    auto level = scan([&](double t) { return ratio_level(params, t); }, period);
    rep.add_recorded("periodic.inf", level.min);
    rep.add_recorded("periodic.sup", level.max);

    double m_lower = level.min - 1.0;
    double m_upper = 1.0 - level.max;
    double m_either = std::max(m_lower, m_upper);
    ConditionEntry either;
    either.name = "periodic.either_bound";
    either.quantity = m_lower >= m_upper ? level.min : level.max;
    either.threshold = 1.0;
    either.strict = true;
    either.margin = m_either;
    either.verdict = ConditionReport::classify(m_either);
    rep.entries.push_back(either);

    auto a_ext = scan([&](double t) { return params.a.eval(t); }, period);
    rep.add_positivity("attraction.a_inf_positive", a_ext.min);

    auto sup = lagged_integral_sup_detail(params.a, params.delay, period, 2048, 256, jobs);
    rep.add_upper("attraction.gamma_sup_integral", params.gamma * sup.value, 6.0);
    rep.add_recorded("attraction.integral_error", params.gamma * sup.error_estimate);
    return rep;
}

ConditionReport check_global_attraction(const ProportionalParams& params, int jobs) {
    ConditionReport rep;
    double period = params.r.period() ? *params.r.period() : 1.0;
    if (!params.delay.is_constant() && params.delay.period())
        period = common_period({period, *params.delay.period()}).value_or(period);

    rep.add_lower("proportional.a_gt_b", params.a, params.b);
    double level = (params.a / params.b - 1.0) * std::pow(params.K, params.gamma);
    rep.add_not_equal("proportional.distance_from_unity", level, 1.0);

    auto sup = lagged_integral_sup_detail(params.r, params.delay, period, 2048, 256, jobs);
    rep.add_upper("proportional.gamma_a_sup_integral", params.gamma * params.a * sup.value, 6.0);
    rep.add_recorded("proportional.sup_integral_r", sup.value);
    rep.add_recorded("proportional.integral_error", sup.error_estimate);
    return rep;
}

ConditionReport check_local_stability(const ProportionalParams& params, int jobs) {
    ConditionReport rep;
    double period = params.r.period() ? *params.r.period() : 1.0;
    if (!params.delay.is_constant() && params.delay.period())
        period = common_period({period, *params.delay.period()}).value_or(period);

    rep.add_lower("local.a_gt_b", params.a, params.b);
    rep.add_positivity("local.r_inf_positive", params.r.grid_min(kGrid));

    double coeff = linearized_coefficient(params);
    rep.add_recorded("local.coefficient", coeff);
    auto sup = lagged_integral_sup_detail(params.r, params.delay, period, 2048, 256, jobs);
    rep.add_upper("local.coefficient_sup_integral", coeff * sup.value, 1.5);
    rep.add_recorded("local.integral_error", coeff * sup.error_estimate);
    return rep;
}

} // namespace fishsim
