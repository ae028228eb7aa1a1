#ifndef FISHSIM_COEFFICIENT_HPP
#define FISHSIM_COEFFICIENT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fishsim {

/** A nonnegative T-periodic scalar function of time.
 *
 * Variants: a constant, a sinusoid mean + amplitude*sin(2*pi*t/period + phase),
 * a truncated Fourier series, or a periodic piecewise-linear sample table over
 * one period. Periodic variants are evaluated after exact range reduction
 * (fmod), so eval(t + period) tracks eval(t) to rounding error. */
class CoefficientSpec {
public:
    enum class Kind { constant, sinusoid, fourier, piecewise_linear };

    /// Constant c for all t.
    static CoefficientSpec constant(double c);
    /// mean + amplitude*sin(2*pi*t/period + phase).
    static CoefficientSpec sinusoid(double mean, double amplitude, double period,
                                    double phase = 0.0);
    /// c0 + sum_k cos_coeffs[k-1]*cos(2*pi*k*t/period) + sin_coeffs[k-1]*sin(2*pi*k*t/period).
    static CoefficientSpec fourier(double period, double c0,
                                   std::vector<double> cos_coeffs,
                                   std::vector<double> sin_coeffs);
    /// Linear interpolation of (t_i, v_i) samples covering [0, period), wrapping
    /// the last sample to the first. Sample times must be strictly increasing
    /// and lie in [0, period).
    static CoefficientSpec piecewise_linear(double period, std::vector<double> times,
                                            std::vector<double> values);

    double eval(double t) const;

    Kind kind() const { return kind_; }
    bool is_constant() const { return kind_ == Kind::constant; }
    /// Period of a periodic variant; empty for a constant.
    std::optional<double> period() const;

    /// Same shape scaled by s (all values multiplied pointwise).
    CoefficientSpec scaled(double s) const;

    /// Min/max over n samples spanning one closed period [0, T]
    /// (a window [0, 1] for constants).
    double grid_min(std::size_t n = 4096) const;
    double grid_max(std::size_t n = 4096) const;

    // Raw parameters, used by the config echo.
    double constant_value() const { return c0_; }
    double mean() const { return c0_; }
    double amplitude() const { return amplitude_; }
    double phase() const { return phase_; }
    double fourier_c0() const { return c0_; }
    const std::vector<double>& cos_coeffs() const { return cos_; }
    const std::vector<double>& sin_coeffs() const { return sin_; }
    const std::vector<double>& sample_times() const { return times_; }
    const std::vector<double>& sample_values() const { return values_; }

private:
    CoefficientSpec() = default;

    Kind kind_ = Kind::constant;
    double c0_ = 0.0;         // constant value, sinusoid mean, or Fourier constant term
    double amplitude_ = 0.0;
    double period_ = 0.0;
    double phase_ = 0.0;
    std::vector<double> cos_, sin_;      // Fourier coefficients, harmonic k = index+1
    std::vector<double> times_, values_; // piecewise-linear samples
};

/** The deviating argument theta(t) = t - tau(t), tau >= 0.
 *
 * Either a constant lag or a time-varying lag given as a CoefficientSpec. */
class DelaySpec {
public:
    static DelaySpec constant_lag(double tau);
    static DelaySpec varying_lag(CoefficientSpec tau);

    double lag(double t) const;
    double theta(double t) const { return t - lag(t); }

    bool is_constant() const { return !tau_spec_.has_value(); }
    double constant_value() const { return tau_; }
    const CoefficientSpec& varying_spec() const { return *tau_spec_; }
    std::optional<double> period() const;

    /// Grid min/max of tau over one closed period (sigma of the bounded-lag
    /// hypothesis is lag_max).
    double lag_min(std::size_t n = 4096) const;
    double lag_max(std::size_t n = 4096) const;

private:
    DelaySpec() = default;
    double tau_ = 0.0;
    std::optional<CoefficientSpec> tau_spec_;
};

/** Least common multiple of a set of periods, when they are commensurate
 * within tol (relative); empty otherwise. An empty input yields empty. */
std::optional<double> common_period(const std::vector<double>& periods,
                                    double tol = 1e-9);

const char* to_string(CoefficientSpec::Kind k);

} // namespace fishsim

#endif
