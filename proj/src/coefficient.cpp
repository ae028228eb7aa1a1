#include "fishsim/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fishsim {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Exact range reduction into [0, period). fmod is exact per IEEE 754, so the
// only rounding comes from the caller's argument.
double reduce(double t, double period) {
    double u = std::fmod(t, period);
    if (u < 0.0) u += period;
    return u;
}

} // namespace

CoefficientSpec CoefficientSpec::constant(double c) {
    if (!std::isfinite(c)) throw std::domain_error("constant coefficient must be finite");
    CoefficientSpec s;
    s.kind_ = Kind::constant;
    s.c0_ = c;
    return s;
}

CoefficientSpec CoefficientSpec::sinusoid(double mean, double amplitude, double period,
                                          double phase) {
    if (!(period > 0.0)) throw std::domain_error("sinusoid period must be positive");
    CoefficientSpec s;
    s.kind_ = Kind::sinusoid;
    s.c0_ = mean;
    s.amplitude_ = amplitude;
    s.period_ = period;
    s.phase_ = phase;
    return s;
}

CoefficientSpec CoefficientSpec::fourier(double period, double c0,
                                         std::vector<double> cos_coeffs,
                                         std::vector<double> sin_coeffs) {
    if (!(period > 0.0)) throw std::domain_error("fourier period must be positive");
    CoefficientSpec s;
    s.kind_ = Kind::fourier;
    s.period_ = period;
    s.c0_ = c0;
    s.cos_ = std::move(cos_coeffs);
    s.sin_ = std::move(sin_coeffs);
    return s;
}

CoefficientSpec CoefficientSpec::piecewise_linear(double period, std::vector<double> times,
                                                  std::vector<double> values) {
    if (!(period > 0.0)) throw std::domain_error("piecewise-linear period must be positive");
    if (times.size() != values.size() || times.empty())
        throw std::domain_error("piecewise-linear table needs matching, nonempty times/values");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0 && times[i] < period))
            throw std::domain_error("piecewise-linear sample times must lie in [0, period)");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::domain_error("piecewise-linear sample times must be strictly increasing");
    }
    CoefficientSpec s;
    s.kind_ = Kind::piecewise_linear;
    s.period_ = period;
    s.times_ = std::move(times);
    s.values_ = std::move(values);
    return s;
}

double CoefficientSpec::eval(double t) const {
    switch (kind_) {
    case Kind::constant:
        return c0_;
    case Kind::sinusoid: {
        double u = reduce(t, period_);
        return c0_ + amplitude_ * std::sin(two_pi * (u / period_) + phase_);
    }
    case Kind::fourier: {
        double u = reduce(t, period_);
        double w = two_pi * (u / period_);
        double v = c0_;
        for (std::size_t k = 0; k < cos_.size(); ++k)
            v += cos_[k] * std::cos(double(k + 1) * w);
        for (std::size_t k = 0; k < sin_.size(); ++k)
            v += sin_[k] * std::sin(double(k + 1) * w);
        return v;
    }
    case Kind::piecewise_linear: {
        double u = reduce(t, period_);
        // Containing sample interval; the last interval wraps to times_[0]+period.
        auto it = std::upper_bound(times_.begin(), times_.end(), u);
        std::size_t j = (it == times_.begin()) ? times_.size() - 1 : std::size_t(it - times_.begin()) - 1;
        std::size_t jn = (j + 1) % times_.size();
        double t0 = times_[j];
        double t1 = (jn == 0) ? times_[0] + period_ : times_[jn];
        if (u < t0) u += period_; // u fell before times_[0]: wrapped interval
        double w = (t1 > t0) ? (u - t0) / (t1 - t0) : 0.0;
        return values_[j] + w * (values_[jn] - values_[j]);
    }
    }
    return c0_;
}

std::optional<double> CoefficientSpec::period() const {
    if (kind_ == Kind::constant) return std::nullopt;
    return period_;
}

CoefficientSpec CoefficientSpec::scaled(double s) const {
    CoefficientSpec r = *this;
    r.c0_ *= s;
    r.amplitude_ *= s;
    for (double& c : r.cos_) c *= s;
    for (double& c : r.sin_) c *= s;
    for (double& v : r.values_) v *= s;
    return r;
}

double CoefficientSpec::grid_min(std::size_t n) const {
    double T = period().value_or(1.0);
    double m = eval(0.0);
    for (std::size_t i = 1; i < n; ++i)
        m = std::min(m, eval(T * double(i) / double(n - 1)));
    return m;
}

double CoefficientSpec::grid_max(std::size_t n) const {
    double T = period().value_or(1.0);
    double m = eval(0.0);
    for (std::size_t i = 1; i < n; ++i)
        m = std::max(m, eval(T * double(i) / double(n - 1)));
    return m;
}

DelaySpec DelaySpec::constant_lag(double tau) {
    if (!std::isfinite(tau)) throw std::domain_error("constant lag must be finite");
    DelaySpec d;
    d.tau_ = tau;
    return d;
}

DelaySpec DelaySpec::varying_lag(CoefficientSpec tau) {
    DelaySpec d;
    d.tau_spec_ = std::move(tau);
    return d;
}

double DelaySpec::lag(double t) const {
    return tau_spec_ ? tau_spec_->eval(t) : tau_;
}

std::optional<double> DelaySpec::period() const {
    return tau_spec_ ? tau_spec_->period() : std::nullopt;
}

double DelaySpec::lag_min(std::size_t n) const {
    return tau_spec_ ? tau_spec_->grid_min(n) : tau_;
}

double DelaySpec::lag_max(std::size_t n) const {
    return tau_spec_ ? tau_spec_->grid_max(n) : tau_;
}

namespace {

// Smallest q <= max_den with |x - p/q| <= tol*q-ish, by continued fractions.
// Returns false if x is not close to a small rational.
// The denominator cap keeps the tolerance meaningful: with unbounded q every
// real number has convergents within 1e-9, and genuinely incommensurate
// periods would slip through as huge pseudo-rationals.
bool as_rational(double x, double tol, long& p, long& q) {
    constexpr long max_den = 4096;
    double a = x;
    long p0 = 1, q0 = 0, p1 = long(std::floor(a)), q1 = 1;
    for (int iter = 0; iter < 64; ++iter) {
        if (std::abs(x - double(p1) / double(q1)) <= tol * std::max(1.0, std::abs(x))) {
            p = p1;
            q = q1;
            return true;
        }
        double frac = a - std::floor(a);
        if (frac < 1e-15) break;
        a = 1.0 / frac;
        long ai = long(std::floor(a));
        long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    return false;
}

long lcm_long(long a, long b) {
    long g = a;
    for (long r = b; r != 0;) { long t = g % r; g = r; r = t; }
    return a / g * b;
}

} // namespace

std::optional<double> common_period(const std::vector<double>& periods, double tol) {
    if (periods.empty()) return std::nullopt;
    double base = periods[0];
    // T = base * (n_i/d_i) for each period; the LCM is base * lcm(n_i)/gcd-free
    // common denominator handling via rationals p_i/q_i = periods[i]/base.
    long num_lcm = 1, den_gcd = 1;
    bool first = true;
    for (double T : periods) {
        if (!(T > 0.0)) return std::nullopt;
        long p, q;
        if (!as_rational(T / base, tol, p, q)) return std::nullopt;
        if (p <= 0) return std::nullopt;
        if (first) {
            num_lcm = p;
            den_gcd = q;
            first = false;
        } else {
            num_lcm = lcm_long(num_lcm, p);
            long g = den_gcd;
            for (long r = q; r != 0;) { long t = g % r; g = r; r = t; }
            den_gcd = g;
        }
    }
    return base * double(num_lcm) / double(den_gcd);
}

const char* to_string(CoefficientSpec::Kind k) {
    switch (k) {
    case CoefficientSpec::Kind::constant: return "constant";
    case CoefficientSpec::Kind::sinusoid: return "sinusoid";
    case CoefficientSpec::Kind::fourier: return "fourier";
    case CoefficientSpec::Kind::piecewise_linear: return "piecewise_linear";
    }
    return "?";
}

} // namespace fishsim
