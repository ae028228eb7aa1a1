#ifndef FISHSIM_MODEL_HPP
#define FISHSIM_MODEL_HPP

#include "fishsim/coefficient.hpp"
#include "fishsim/report.hpp"

#include <optional>

namespace fishsim {

/** Initial data for a delayed run: a bounded function phi on t < 0 in raw
 * state units (biomass for the harvesting model, perturbation for linear
 * comparison runs) and the initial value at t = 0.
 *
 * phi is stored in raw units so phi = 0 is representable; nonnegativity and
 * n0 > 0 are requirements of the harvesting model only and are checked by
 * validate(), not here, since linear comparison runs use signed values. */
class HistorySpec {
public:
    static HistorySpec constant(double phi, double n0);
    /// Linear interpolation of (t_i, v_i) with t_i < 0 strictly increasing;
    /// clamped to the end values outside the table.
    static HistorySpec table(std::vector<double> times, std::vector<double> values,
                             double n0);
    /// phi(t) = spec.eval(t) for t < 0.
    static HistorySpec formula(CoefficientSpec spec, double n0);

    double phi(double t) const;
    double n0() const { return n0_; }

    /// Min/max of phi over n samples of [-window, 0).
    double grid_min(double window, std::size_t n = 4096) const;
    double grid_max(double window, std::size_t n = 4096) const;

    enum class Kind { constant, table, formula };
    Kind kind() const { return kind_; }
    double constant_value() const { return value_; }
    const std::vector<double>& sample_times() const { return times_; }
    const std::vector<double>& sample_values() const { return values_; }
    const CoefficientSpec& formula_spec() const { return *spec_; }

private:
    HistorySpec() = default;
    Kind kind_ = Kind::constant;
    double value_ = 0.0;
    double n0_ = 0.0;
    std::vector<double> times_, values_;
    std::optional<CoefficientSpec> spec_;
};

/** Data of the delayed harvesting model
 *
 *     N'(t) = [ a(t) / (1 + (N(theta(t))/K(t))^gamma) - b(t) ] N(t)
 *
 * with time-varying fecundity scale a, mortality b, carrying capacity K,
 * Hill exponent gamma and deviating argument theta(t) = t - tau(t). */
struct ModelParams {
    double gamma = 1.0;
    CoefficientSpec a = CoefficientSpec::constant(0.0);
    CoefficientSpec b = CoefficientSpec::constant(0.0);
    CoefficientSpec K = CoefficientSpec::constant(1.0);
    DelaySpec delay = DelaySpec::constant_lag(0.0);
    /// Shared period T of all periodic components. Empty: derived from the
    /// component periods (constants impose nothing; all-constant models get 1).
    std::optional<double> common_period;

    ModelParams() = default;
    ModelParams(double gamma, CoefficientSpec a, CoefficientSpec b, CoefficientSpec K,
                DelaySpec delay, std::optional<double> common_period = std::nullopt);

    /// Shared period when the component periods are commensurate; empty otherwise.
    std::optional<double> derived_period() const;
    /// common_period if set, else derived_period(), else 1 for all-constant models.
    double effective_period() const;
};

/** The proportional-coefficient variant: constant a, b, K with a shared
 * time-varying factor r(t),
 *
 *     N'(t) = [ a r(t) / (1 + (N(theta(t))/K)^gamma) - b r(t) ] N(t).
 */
struct ProportionalParams {
    double a = 0.0;
    double b = 0.0;
    double gamma = 1.0;
    double K = 1.0;
    CoefficientSpec r = CoefficientSpec::constant(1.0);
    DelaySpec delay = DelaySpec::constant_lag(0.0);

    ProportionalParams() = default;
    ProportionalParams(double a, double b, double gamma, double K, CoefficientSpec r,
                       DelaySpec delay);

    /// The equivalent general model (a_spec = a*r(t), b_spec = b*r(t)).
    ModelParams as_model() const;
};

/// Hill-type fecundity a / (1 + (N/K)^gamma).
double hill_fecundity(double a_val, double n_delayed, double k_val, double gamma);

/// Right-hand side of the model in biomass coordinates.
double rhs(double t, double n, double n_delayed, const ModelParams& params);

/// Right-hand side in logarithmic coordinates x = ln N:
/// x'(t) = a(t)/(1 + (N(theta(t))/K(t))^gamma) - b(t).
/// Independent of x itself; only the delayed biomass enters.
double rhs_log(double t, double x, double n_delayed, const ModelParams& params);

/// The unique positive equilibrium (a/b - 1)^(1/gamma) * K; requires a > b.
double equilibrium(const ProportionalParams& params);

/// Coefficient gamma*(a-b)*b/a of the linearization about the equilibrium.
double linearized_coefficient(const ProportionalParams& params);

/// Linearized right-hand side x'(t) = -gamma*(a-b)*b/a * r(t) * x(theta(t)).
double linearized_rhs(double t, double x_delayed, const ProportionalParams& params);

/** Checks the standing hypotheses on a dense grid over one shared period (or
 * a window of max-lag + 1 for all-constant data): positive lower bounds for b
 * and K, nonnegative a, nonnegative lag, bounded nonnegative history, n0 > 0,
 * and commensurate component periods. Never throws; findings go into the
 * report. */
ConditionReport validate(const ModelParams& params, const HistorySpec& history,
                         std::size_t grid_points = 4096);

} // namespace fishsim

#endif
