#include "fishsim/model.hpp"

#include "fishsim/csv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fishsim {

HistorySpec HistorySpec::constant(double phi, double n0) {
    HistorySpec h;
    h.kind_ = Kind::constant;
    h.value_ = phi;
    h.n0_ = n0;
    return h;
}

HistorySpec HistorySpec::table(std::vector<double> times, std::vector<double> values,
                               double n0) {
    if (times.size() != values.size() || times.empty())
        throw std::domain_error("history table needs matching, nonempty times/values");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] < 0.0))
            throw std::domain_error("history sample times must be negative");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::domain_error("history sample times must be strictly increasing");
    }
    HistorySpec h;
    h.kind_ = Kind::table;
    h.times_ = std::move(times);
    h.values_ = std::move(values);
    h.n0_ = n0;
    return h;
}

HistorySpec HistorySpec::formula(CoefficientSpec spec, double n0) {
    HistorySpec h;
    h.kind_ = Kind::formula;
    h.spec_ = std::move(spec);
    h.n0_ = n0;
    return h;
}

double HistorySpec::phi(double t) const {
    switch (kind_) {
    case Kind::constant:
        return value_;
    case Kind::formula:
        return spec_->eval(t);
    case Kind::table: {
        if (t <= times_.front()) return values_.front();
        if (t >= times_.back()) return values_.back();
        auto it = std::upper_bound(times_.begin(), times_.end(), t);
        std::size_t j = std::size_t(it - times_.begin()) - 1;
        double w = (t - times_[j]) / (times_[j + 1] - times_[j]);
        return values_[j] + w * (values_[j + 1] - values_[j]);
    }
    }
    return value_;
}

double HistorySpec::grid_min(double window, std::size_t n) const {
    double m = phi(-window);
    for (std::size_t i = 1; i < n; ++i)
        m = std::min(m, phi(-window * (1.0 - double(i) / double(n))));
    return m;
}

double HistorySpec::grid_max(double window, std::size_t n) const {
    double m = phi(-window);
    for (std::size_t i = 1; i < n; ++i)
        m = std::max(m, phi(-window * (1.0 - double(i) / double(n))));
    return m;
}

ModelParams::ModelParams(double gamma_, CoefficientSpec a_, CoefficientSpec b_,
                         CoefficientSpec K_, DelaySpec delay_,
                         std::optional<double> common_period_)
    : gamma(gamma_), a(std::move(a_)), b(std::move(b_)), K(std::move(K_)),
      delay(std::move(delay_)), common_period(common_period_) {
    if (!(gamma > 0.0)) throw std::domain_error("gamma must be positive");
}

std::optional<double> ModelParams::derived_period() const {
    std::vector<double> periods;
    for (const auto& p : {a.period(), b.period(), K.period(), delay.period()})
        if (p) periods.push_back(*p);
    if (periods.empty()) return std::nullopt;
    return fishsim::common_period(periods);
}

double ModelParams::effective_period() const {
    if (common_period) return *common_period;
    if (auto T = derived_period()) return *T;
    return 1.0;
}

ProportionalParams::ProportionalParams(double a_, double b_, double gamma_, double K_,
                                       CoefficientSpec r_, DelaySpec delay_)
    : a(a_), b(b_), gamma(gamma_), K(K_), r(std::move(r_)), delay(std::move(delay_)) {
    if (!(gamma > 0.0)) throw std::domain_error("gamma must be positive");
    if (!(K > 0.0)) throw std::domain_error("K must be positive");
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("a and b must be positive");
}

ModelParams ProportionalParams::as_model() const {
    return ModelParams(gamma, r.scaled(a), r.scaled(b), CoefficientSpec::constant(K),
                       delay, r.period());
}

double hill_fecundity(double a_val, double n_delayed, double k_val, double gamma) {
    if (!(k_val > 0.0)) throw std::domain_error("hill_fecundity: K must be positive");
    if (!(gamma > 0.0)) throw std::domain_error("hill_fecundity: gamma must be positive");
    if (a_val < 0.0) throw std::domain_error("hill_fecundity: a must be nonnegative");
    if (n_delayed < 0.0) throw std::domain_error("hill_fecundity: N must be nonnegative");
    return a_val / (1.0 + std::pow(n_delayed / k_val, gamma));
}

double rhs(double t, double n, double n_delayed, const ModelParams& params) {
    return (hill_fecundity(params.a.eval(t), n_delayed, params.K.eval(t), params.gamma) -
            params.b.eval(t)) *
           n;
}

double rhs_log(double t, double, double n_delayed, const ModelParams& params) {
    return hill_fecundity(params.a.eval(t), n_delayed, params.K.eval(t), params.gamma) -
           params.b.eval(t);
}

double equilibrium(const ProportionalParams& params) {
    if (!(params.a > params.b))
        throw std::domain_error("no positive equilibrium: requires a > b");
    return std::pow(params.a / params.b - 1.0, 1.0 / params.gamma) * params.K;
}

double linearized_coefficient(const ProportionalParams& params) {
    if (!(params.a > params.b))
        throw std::domain_error("linearization requires a > b");
    return params.gamma * (params.a - params.b) * params.b / params.a;
}

double linearized_rhs(double t, double x_delayed, const ProportionalParams& params) {
    return -linearized_coefficient(params) * params.r.eval(t) * x_delayed;
}

ConditionReport validate(const ModelParams& params, const HistorySpec& history,
                         std::size_t grid_points) {
    ConditionReport rep;
    const std::size_t n = std::max<std::size_t>(grid_points, 2);

    // Shared period of the periodic components, or a window of max-lag + 1
    // when everything is constant.
    std::vector<double> periods;
    for (const auto& p : {params.a.period(), params.b.period(), params.K.period(),
                          params.delay.period()})
        if (p) periods.push_back(*p);
    std::optional<double> T;
    if (!periods.empty()) {
        T = common_period(periods);
        if (!T) {
            rep.entries.push_back({"periods.commensurate", 0.0, 0.0, true, Verdict::fails, 0.0});
            rep.add_note("component periods are not commensurate within tolerance; "
                         "no shared period T exists");
            return rep;
        }
        if (params.common_period) {
            // The declared T must be an integer multiple of the derived one.
            double ratio = *params.common_period / *T;
            double m = 1e-9 - std::abs(ratio - std::round(ratio));
            rep.entries.push_back({"periods.shared_with_declared", ratio, std::round(ratio),
                                   false, ConditionReport::classify(m, 0.0), m});
        }
    }
    double window = T ? *T : params.delay.lag_max(n) + 1.0;
    if (!(window > 0.0)) window = 1.0;

    double a_min = params.a.eval(0), b_min = params.b.eval(0), k_min = params.K.eval(0);
    double k_max = k_min, lag_min = params.delay.lag(0), lag_max = lag_min;
    for (std::size_t i = 1; i < n; ++i) {
        double t = window * double(i) / double(n - 1);
        a_min = std::min(a_min, params.a.eval(t));
        b_min = std::min(b_min, params.b.eval(t));
        double k = params.K.eval(t);
        k_min = std::min(k_min, k);
        k_max = std::max(k_max, k);
        double lag = params.delay.lag(t);
        lag_min = std::min(lag_min, lag);
        lag_max = std::max(lag_max, lag);
    }

    rep.add_positivity("model.gamma_positive", params.gamma);
    rep.add_positivity("a1.b_lower_bound", b_min);
    rep.add_positivity("a1.K_lower_bound", k_min);
    rep.add_recorded("a1.K_upper_bound", k_max);
    rep.add_lower("a1.a_nonnegative", a_min, 0.0, false);
    rep.add_lower("a2.theta_le_t", lag_min, 0.0, false);
    rep.add_recorded("a2.lag_sup", lag_max);

    double hist_window = std::max(lag_max, 1.0);
    double phi_min = history.grid_min(hist_window, n);
    double phi_max = history.grid_max(hist_window, n);
    rep.add_lower("a3.phi_nonnegative", phi_min, 0.0, false);
    rep.add_recorded("a3.phi_sup", phi_max);
    rep.add_positivity("a3.n0_positive", history.n0());

    if (T)
        rep.add_note("grid of " + std::to_string(n) + " samples over shared period T = " +
                     format_double_shortest(*T));
    else
        rep.add_note("all components constant; grid over window of length " +
                     format_double_shortest(window));
    return rep;
}

} // namespace fishsim
