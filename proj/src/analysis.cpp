#include "fishsim/analysis.hpp"

#include "fishsim/conditions.hpp"
#include "fishsim/csv.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <type_traits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fishsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sampled_sup(const std::function<double(double)>& mag, double lo, double hi,
                   std::size_t n) {
    double best = mag(lo);
    for (std::size_t i = 1; i < n; ++i) {
        double t = lo + (hi - lo) * i / (n - 1);
        best = std::max(best, mag(t));
    }
    return best;
}

struct DecayFit {
    double rate = kNaN;
    bool estimable = false;
};

// Least-squares slope of ln(per-period sup) over the last five periods that
// sit above the rounding-noise floor, converted to a positive-when-decaying
// rate per unit time. A fast-decaying run bottoms out at roundoff long before
// the horizon, so the usable window is cut at the first period whose sup falls
// to the floor; fewer than five usable periods leaves the rate not estimable.
DecayFit fit_decay(const std::function<double(double)>& mag, double horizon, double period) {
    DecayFit fit;
    std::size_t periods = static_cast<std::size_t>(horizon / period + 1e-9);
    if (periods < 5)
        return fit;

    constexpr std::size_t kSamples = 256;
    std::vector<double> sup(periods, 0.0);
    for (std::size_t p = 0; p < periods; ++p) {
        double t0 = p * period;
        for (std::size_t k = 0; k < kSamples; ++k)
            sup[p] = std::max(sup[p], mag(t0 + period * k / kSamples));
    }
    sup.back() = std::max(sup.back(), mag(horizon));

    double peak = *std::max_element(sup.begin(), sup.end());
    double floor = 64.0 * std::numeric_limits<double>::epsilon() * peak;
    if (floor == 0.0)
        return fit;

    std::size_t usable = 0;
    while (usable < periods && sup[usable] > floor)
        ++usable;
    if (usable < 5)
        return fit;

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
        double x = static_cast<double>(k);
        double y = std::log(sup[usable - 5 + k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double slope = (5.0 * sxy - sx * sy) / (5.0 * sxx - sx * sx);
    fit.rate = -slope / period;
    fit.estimable = true;
    return fit;
}

double geometric_mean_capacity(const CoefficientSpec& K, double period) {
    constexpr std::size_t n = 4096;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += std::log(K.eval(period * i / (n - 1)));
    return std::exp(acc / n);
}

double proportional_period(const ProportionalParams& p) {
    double period = p.r.period() ? *p.r.period() : 1.0;
    if (!p.delay.is_constant() && p.delay.period())
        period = common_period({period, *p.delay.period()}).value_or(period);
    return period;
}

} // namespace

PeriodicOrbit find_periodic_solution(const ModelParams& params, const StepControl& control,
                                     std::size_t transient_periods, double tol,
                                     std::optional<double> guess, bool warn_and_proceed) {
    auto conditions = check_global_attraction(params);
    if (conditions.overall() != Verdict::holds && !warn_and_proceed)
        throw std::invalid_argument(
            "global-attraction conditions do not all hold (overall " +
            std::string(to_string(conditions.overall())) +
            "); pass warn_and_proceed to search anyway");

    double period = params.effective_period();
    transient_periods = std::max<std::size_t>(1, transient_periods);
    double start = guess.value_or(geometric_mean_capacity(params.K, period));
    if (!(start > 0.0))
        throw std::invalid_argument("periodic-orbit guess must be positive");

    double t_star = transient_periods * period;
    double t_end = t_star + period;
    HistorySpec history = HistorySpec::constant(start, start);
    Trajectory traj = integrate(params, history, t_end, control);

    auto mag = [&](double t) { return std::abs(traj.eval(t) - traj.eval(t - period)); };
    double residual = sampled_sup(mag, t_star, t_end, 2048);

    std::vector<double> ts{t_star};
    for (double t : traj.times()) {
        if (t > t_star + 1e-12 && t < t_end - 1e-12)
            ts.push_back(t);
    }
    ts.push_back(t_end);
    std::vector<double> xs(ts.size()), ds(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        double t = ts[k];
        xs[k] = traj.eval_state(t);
        double delayed = traj.eval(params.delay.theta(t));
        ds[k] = rhs_log(t, xs[k], delayed, params);
    }
    double anchor = std::exp(xs.front());
    Trajectory orbit(std::move(ts), std::move(xs), std::move(ds),
                     HistorySpec::constant(anchor, anchor), /*log_space=*/true);

    PeriodicOrbit out{std::move(orbit), period, residual, t_star, residual < tol};
    return out;
}

std::vector<ConvergenceReport> verify_attraction(const ModelParams& params,
                                                 const std::vector<HistorySpec>& histories,
                                                 const StepControl& control,
                                                 std::size_t horizon_periods, double tol) {
    if (histories.size() < 2)
        throw std::invalid_argument("attraction comparison needs at least two histories");

    double period = params.effective_period();
    double horizon = std::max<std::size_t>(1, horizon_periods) * period;

    std::vector<Trajectory> runs;
    runs.reserve(histories.size());
    for (std::size_t i = 0; i < histories.size(); ++i) {
        try {
            runs.push_back(integrate(params, histories[i], horizon, control));
        } catch (const BlowUpError& e) {
            throw BlowUpError(e.time(), "history " + std::to_string(i) + ": " + e.what());
        }
    }

    std::vector<ConvergenceReport> out;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::size_t j = i + 1; j < runs.size(); ++j) {
            auto mag = [&](double t) { return std::abs(runs[i].eval(t) - runs[j].eval(t)); };
            ConvergenceReport rep;
            rep.first = i;
            rep.second = j;
            rep.sup_diff_last_period = sampled_sup(mag, horizon - period, horizon, 2048);
            auto fit = fit_decay(mag, horizon, period);
            rep.decay_rate_estimate = fit.rate;
            rep.rate_estimable = fit.estimable;
            rep.converged = rep.sup_diff_last_period < tol;
            out.push_back(rep);
        }
    }
    return out;
}

LocalStabilityReport verify_local_stability(const ProportionalParams& params, double x0,
                                            const StepControl& control, double horizon,
                                            double tol_linear, double tol_relative,
                                            bool warn_and_proceed) {
    auto conditions = check_local_stability(params);
    if (conditions.overall() != Verdict::holds && !warn_and_proceed)
        throw std::invalid_argument(
            "local-stability conditions do not all hold (overall " +
            std::string(to_string(conditions.overall())) +
            "); pass warn_and_proceed to run anyway");

    double n_star = equilibrium(params);
    double coeff = linearized_coefficient(params);
    double period = proportional_period(params);
    if (!(horizon > period))
        throw std::invalid_argument("horizon must exceed one period");

    LocalStabilityReport out;
    out.equilibrium_value = n_star;

    CoefficientSpec r_eff = params.r.scaled(coeff);
    Trajectory lin = integrate_linear(r_eff, params.delay, HistorySpec::constant(x0, x0),
                                      horizon, control);
    auto mag_l = [&](double t) { return std::abs(lin.eval(t)); };
    out.linear.sup_diff_last_period = sampled_sup(mag_l, horizon - period, horizon, 2048);
    auto fit_l = fit_decay(mag_l, horizon, period);
    out.linear.decay_rate_estimate = fit_l.rate;
    out.linear.rate_estimable = fit_l.estimable;
    out.linear.converged = out.linear.sup_diff_last_period < tol_linear;

    double n0 = n_star * 1.01;
    Trajectory nl = integrate(params.as_model(), HistorySpec::constant(n0, n0), horizon, control);
    auto mag_n = [&](double t) { return std::abs(nl.eval(t) - n_star); };
    out.nonlinear.sup_diff_last_period = sampled_sup(mag_n, horizon - period, horizon, 2048);
    auto fit_n = fit_decay(mag_n, horizon, period);
    out.nonlinear.decay_rate_estimate = fit_n.rate;
    out.nonlinear.rate_estimable = fit_n.estimable;
    out.nonlinear.converged = out.nonlinear.sup_diff_last_period < tol_relative * n_star;
    return out;
}

PersistenceBoundsResult persistence_bounds(const Trajectory& traj, double discard) {
    if (!(discard < traj.end()))
        throw std::invalid_argument("discard window swallows the whole trajectory");
    double lo = std::max(discard, traj.start());
    constexpr std::size_t n = 10000;
    double v0 = traj.eval(lo);
    PersistenceBoundsResult out{v0, v0};
    for (std::size_t i = 1; i < n; ++i) {
        double v = traj.eval(lo + (traj.end() - lo) * i / (n - 1));
        out.alpha = std::min(out.alpha, v);
        out.beta = std::max(out.beta, v);
    }
    return out;
}

double SweepAxis::value(std::size_t idx) const {
    if (count <= 1)
        return lo;
    return lo + (hi - lo) * idx / (count - 1);
}

const char* to_string(SweepAxisKind k) {
    switch (k) {
    case SweepAxisKind::gamma: return "gamma";
    case SweepAxisKind::lag: return "lag";
    case SweepAxisKind::amplitude: return "amplitude";
    }
    return "?";
}

namespace {

CoefficientSpec with_amplitude(const CoefficientSpec& spec, double amplitude,
                               const char* which) {
    if (spec.kind() != CoefficientSpec::Kind::sinusoid)
        throw std::invalid_argument(std::string("amplitude axis requires a sinusoid ") + which);
    return CoefficientSpec::sinusoid(spec.mean(), amplitude, *spec.period(), spec.phase());
}

void apply_axis(ModelParams& m, SweepAxisKind kind, double v) {
    switch (kind) {
    case SweepAxisKind::gamma: m.gamma = v; break;
    case SweepAxisKind::lag: m.delay = DelaySpec::constant_lag(v); break;
    case SweepAxisKind::amplitude: m.a = with_amplitude(m.a, v, "fecundity scale a"); break;
    }
}

void apply_axis(ProportionalParams& p, SweepAxisKind kind, double v) {
    switch (kind) {
    case SweepAxisKind::gamma: p.gamma = v; break;
    case SweepAxisKind::lag: p.delay = DelaySpec::constant_lag(v); break;
    case SweepAxisKind::amplitude: p.r = with_amplitude(p.r, v, "shared factor r"); break;
    }
}

// The conditions half of one cell; fills the quantity/verdict columns.
void evaluate_conditions(SweepCell& cell, const ModelParams& m,
                         const ProportionalParams* prop) {
    auto rep = check_global_attraction(m, /*jobs=*/1);
    if (const auto* e = rep.find("attraction.gamma_sup_integral")) {
        cell.attraction_quantity = e->quantity;
        cell.attraction_verdict = e->verdict;
    }
    cell.attraction_overall = rep.overall();

    if (prop) {
        cell.has_proportional = true;
        auto prep = check_global_attraction(*prop, /*jobs=*/1);
        if (const auto* e = prep.find("proportional.gamma_a_sup_integral")) {
            cell.proportional_quantity = e->quantity;
            cell.proportional_verdict = e->verdict;
        }
        auto lrep = check_local_stability(*prop, /*jobs=*/1);
        if (const auto* e = lrep.find("local.coefficient_sup_integral")) {
            cell.local_quantity = e->quantity;
            cell.local_verdict = e->verdict;
        }
    } else {
        cell.proportional_quantity = kNaN;
        cell.local_quantity = kNaN;
    }
}

// The empirical half: two standard histories bracketing the carrying
// capacity, classified by the final-period sup-difference.
void evaluate_empirical(SweepCell& cell, const ModelParams& m, const SweepOptions& opts) {
    double period = m.effective_period();
    double horizon = std::max<std::size_t>(1, opts.horizon_periods) * period;
    double k_low = m.K.grid_min();
    double k_high = m.K.grid_max();
    double lo = 0.5 * k_low;
    double hi = 2.0 * k_high;
    try {
        Trajectory a = integrate(m, HistorySpec::constant(lo, lo), horizon, opts.control);
        Trajectory b = integrate(m, HistorySpec::constant(hi, hi), horizon, opts.control);
        auto mag = [&](double t) { return std::abs(a.eval(t) - b.eval(t)); };
        cell.sup_diff = sampled_sup(mag, horizon - period, horizon, 512);
        cell.outcome = cell.sup_diff < opts.tol ? "converged" : "not-converged";
    } catch (const BlowUpError& e) {
        cell.outcome = "overflow";
        cell.detail = e.what();
        cell.sup_diff = kNaN;
    } catch (const std::exception& e) {
        cell.outcome = "error";
        cell.detail = e.what();
        cell.sup_diff = kNaN;
    }
}

template <typename Base>
SweepResult sweep_impl(const Base& base, const SweepAxis& axis1, const SweepAxis& axis2,
                       const SweepOptions& opts) {
    if (axis1.count < 1 || axis2.count < 1)
        throw std::invalid_argument("sweep axes need at least one point");

    SweepResult result;
    result.axis1 = axis1;
    result.axis2 = axis2;
    result.cells.resize(axis1.count * axis2.count);

    auto run_cell = [&](long idx) {
        std::size_t i = static_cast<std::size_t>(idx) / axis2.count;
        std::size_t j = static_cast<std::size_t>(idx) % axis2.count;
        SweepCell cell;
        cell.i = i;
        cell.j = j;
        cell.value1 = axis1.value(i);
        cell.value2 = axis2.value(j);
        try {
            Base b = base;
            apply_axis(b, axis1.kind, cell.value1);
            apply_axis(b, axis2.kind, cell.value2);
            ModelParams m;
            const ProportionalParams* prop = nullptr;
            if constexpr (std::is_same_v<Base, ProportionalParams>) {
                m = b.as_model();
                prop = &b;
            } else {
                m = b;
            }
            evaluate_conditions(cell, m, prop);
            evaluate_empirical(cell, m, opts);
        } catch (const std::exception& e) {
            cell.outcome = "error";
            cell.detail = e.what();
            cell.sup_diff = kNaN;
        }
        result.cells[idx] = std::move(cell);
    };

    long total = static_cast<long>(result.cells.size());
    if (opts.jobs == 1) {
        for (long idx = 0; idx < total; ++idx)
            run_cell(idx);
        return result;
    }
#ifdef _OPENMP
    if (opts.jobs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(opts.jobs)
        for (long idx = 0; idx < total; ++idx)
            run_cell(idx);
    } else {
#pragma omp parallel for schedule(dynamic)
        for (long idx = 0; idx < total; ++idx)
            run_cell(idx);
    }
#else
    for (long idx = 0; idx < total; ++idx)
        run_cell(idx);
#endif
    return result;
}

std::string sanitize(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n' || c == '\r')
            c = ';';
    }
    return s;
}

std::string verdict_or_na(double quantity, Verdict v, bool present) {
    if (!present || std::isnan(quantity))
        return "na";
    return to_string(v);
}

} // namespace

SweepResult sweep(const ProportionalParams& base, const SweepAxis& axis1, const SweepAxis& axis2,
                  const SweepOptions& opts) {
    return sweep_impl(base, axis1, axis2, opts);
}

SweepResult sweep(const ModelParams& base, const SweepAxis& axis1, const SweepAxis& axis2,
                  const SweepOptions& opts) {
    return sweep_impl(base, axis1, axis2, opts);
}

std::string SweepResult::to_csv() const {
    std::string out = "axis1,value1,axis2,value2,attraction_quantity,attraction_verdict,"
                      "attraction_overall,proportional_quantity,proportional_verdict,"
                      "local_quantity,local_verdict,outcome,detail,sup_diff\n";
    for (const auto& c : cells) {
        out += to_string(axis1.kind);
        out += ',';
        out += format_double(c.value1);
        out += ',';
        out += to_string(axis2.kind);
        out += ',';
        out += format_double(c.value2);
        out += ',';
        out += format_double(c.attraction_quantity);
        out += ',';
        out += to_string(c.attraction_verdict);
        out += ',';
        out += to_string(c.attraction_overall);
        out += ',';
        out += format_double(c.proportional_quantity);
        out += ',';
        out += verdict_or_na(c.proportional_quantity, c.proportional_verdict, c.has_proportional);
        out += ',';
        out += format_double(c.local_quantity);
        out += ',';
        out += verdict_or_na(c.local_quantity, c.local_verdict, c.has_proportional);
        out += ',';
        out += c.outcome;
        out += ',';
        out += sanitize(c.detail);
        out += ',';
        out += format_double(c.sup_diff);
        out += '\n';
    }
    return out;
}

} // namespace fishsim
