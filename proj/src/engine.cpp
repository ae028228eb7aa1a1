#include "fishsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace fishsim {

namespace {

constexpr double kBreakpointTol = 1e-12;

// Cubic Hermite on a single provisional segment [t0, t1].
struct ProvisionalSegment {
    double t0, t1, x0, x1, d0, d1;

    double eval(double t) const {
        double h = t1 - t0;
        double s = (t - t0) / h;
        double s2 = s * s;
        double s3 = s2 * s;
        double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        double h10 = s3 - 2.0 * s2 + s;
        double h01 = -2.0 * s3 + 3.0 * s2;
        double h11 = s3 - s2;
        return h00 * x0 + h * h10 * d0 + h01 * x1 + h * h11 * d1;
    }
};

// Method-of-steps driver shared by the harvesting model (log coordinates)
// and the linear comparison equation (raw coordinates). The right-hand side
// is f(t, x, v) where v is the delayed value in evaluation units (biomass
// for log_space, raw state otherwise).
class Stepper {
public:
    using Rhs = std::function<double(double t, double x, double v)>;

    Stepper(Rhs f, const DelaySpec& delay, const HistorySpec& history, bool log_space,
            double state_guard, const StepControl& control)
        : f_(std::move(f)),
          delay_(delay),
          history_(history),
          log_space_(log_space),
          guard_(state_guard),
          control_(control) {}

    Trajectory run(double x0, double t_end, const std::vector<double>& anchors, double h_nom) {
        ts_ = {0.0};
        xs_ = {x0};
        vs_ = {log_space_ ? std::exp(x0) : x0};
        double th0 = delay_.theta(0.0);
        ds_ = {f_(0.0, x0, delayed_value(th0, /*seam_left=*/false))};

        for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
            double a = anchors[i];
            double b = anchors[i + 1];
            double span = b - a;
            int n = std::max(1, static_cast<int>(std::ceil(span / h_nom - 1e-9)));
            for (int j = 1; j <= n; ++j) {
                double target = (j == n) ? b : a + span * j / n;
                advance_to(target, 0);
            }
        }
        (void)t_end;
        return Trajectory(ts_, xs_, ds_, history_, log_space_);
    }

private:
    // Advances from the current mesh tail to target, halving on
    // fixed-point failure.
    void advance_to(double target, int depth) {
        double tn = ts_.back();
        if (target <= tn)
            return;
        if (depth > 40)
            throw std::runtime_error("delay integration stalled near t = " + std::to_string(tn) +
                                     ": vanishing-lag iteration kept failing");
        double x1, d1;
        if (try_step(tn, target, x1, d1)) {
            push_point(target, x1, d1);
            return;
        }
        double mid = tn + (target - tn) / 2.0;
        advance_to(mid, depth + 1);
        advance_to(target, depth + 1);
    }

    void push_point(double t, double x, double d) {
        if (!std::isfinite(x) || std::abs(x) > guard_) {
            if (log_space_)
                throw BlowUpError(t, "solution left the representable range near t = " +
                                         std::to_string(t) +
                                         " (|ln N| > 700: blow-up or extinction)");
            throw BlowUpError(t, "linear solution overflowed near t = " + std::to_string(t));
        }
        ts_.push_back(t);
        xs_.push_back(x);
        ds_.push_back(d);
        vs_.push_back(log_space_ ? std::exp(x) : x);
    }

    // One RK4 step over [tn, t1]. Returns false when the vanishing-lag
    // fixed point did not converge within the iteration budget.
    bool try_step(double tn, double t1, double& x1_out, double& d1_out) {
        double h = t1 - tn;
        double xn = xs_.back();
        double fn = ds_.back();
        bool seam_left = delay_.theta(tn) < 0.0;

        double tm = tn + h / 2.0;
        double th_m = delay_.theta(tm);
        double th_1 = delay_.theta(t1);
        bool needs_prov = th_m > tn || th_1 > tn;

        ProvisionalSegment prov{};
        bool have_prov = false;
        double x_prev = std::numeric_limits<double>::quiet_NaN();

        int budget = needs_prov ? control_.vanishing_lag_max_iter : 1;
        for (int iter = 0; iter < budget; ++iter) {
            auto look = [&](double th) {
                if (th <= tn)
                    return delayed_value(th, seam_left);
                double state = have_prov ? prov.eval(th) : xn + (th - tn) * fn;
                return log_space_ ? std::exp(state) : state;
            };

            double vn = delayed_value(delay_.theta(tn), seam_left);
            double vm = look(th_m);
            double k1 = f_(tn, xn, vn);
            double k2 = f_(tm, xn + h / 2.0 * k1, vm);
            double k3 = f_(tm, xn + h / 2.0 * k2, vm);
            double v1;
            if (th_1 >= t1) {
                // Lag vanished at the right endpoint: defer to the post-sum
                // evaluation below, which sees x1 itself.
                v1 = look(std::min(th_1, t1 - 1e-300));
            } else {
                v1 = look(th_1);
            }
            double k4 = f_(t1, xn + h * k3, v1);
            double x1 = xn + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

            // Endpoint derivative, consistent with the segment being built.
            double d1;
            if (th_1 >= t1) {
                d1 = f_(t1, x1, log_space_ ? std::exp(x1) : x1);
            } else if (th_1 > tn) {
                double state = have_prov ? prov.eval(th_1) : xn + (th_1 - tn) * fn;
                d1 = f_(t1, x1, log_space_ ? std::exp(state) : state);
            } else {
                d1 = f_(t1, x1, delayed_value(th_1, seam_left));
            }

            if (!needs_prov) {
                x1_out = x1;
                d1_out = d1;
                return true;
            }
            if (have_prov && std::abs(x1 - x_prev) < control_.vanishing_lag_tol) {
                x1_out = x1;
                d1_out = d1;
                return true;
            }
            x_prev = x1;
            prov = ProvisionalSegment{tn, t1, xn, x1, fn, d1};
            have_prov = true;
        }
        return false;
    }

    // Delayed value over the completed mesh, in evaluation units.
    // seam_left selects the history side when th lands exactly on 0 while
    // the current step still starts below the history/solution seam.
    double delayed_value(double th, bool seam_left) const {
        if (th < 0.0 || (th == 0.0 && seam_left))
            return history_.phi(th);
        if (th >= ts_.back())
            return vs_.back();
        auto it = std::upper_bound(ts_.begin(), ts_.end(), th);
        std::size_t seg = static_cast<std::size_t>(it - ts_.begin()) - 1;
        if (th == ts_[seg])
            return vs_[seg];
        ProvisionalSegment s{ts_[seg], ts_[seg + 1], xs_[seg], xs_[seg + 1],
                             ds_[seg], ds_[seg + 1]};
        double state = s.eval(th);
        return log_space_ ? std::exp(state) : state;
    }

    Rhs f_;
    const DelaySpec& delay_;
    const HistorySpec& history_;
    bool log_space_;
    double guard_;
    StepControl control_;

    std::vector<double> ts_, xs_, ds_, vs_;
};

std::vector<double> mesh_anchors(const DelaySpec& delay, double t_end, const StepControl& control,
                                 double h_nom) {
    std::vector<double> anchors{0.0};
    double scan = std::max(1e-6, h_nom / 4.0);
    auto xs = propagated_breakpoints(delay, t_end, control.breakpoint_depth, scan);
    for (double x : xs)
        anchors.push_back(x);
    anchors.push_back(t_end);
    std::sort(anchors.begin(), anchors.end());
    std::vector<double> out;
    for (double a : anchors) {
        if (out.empty() || a - out.back() > kBreakpointTol)
            out.push_back(a);
    }
    if (out.back() < t_end)
        out.back() = t_end;
    return out;
}

} // namespace

double StepControl::effective_step(const DelaySpec& delay, double period) const {
    if (step > 0.0)
        return step;
    double lag_min = delay.lag_min();
    double base = std::min(lag_min, period);
    return std::clamp(base / 40.0, 1e-4, 0.05);
}

std::vector<double> propagated_breakpoints(const DelaySpec& delay, double t_end, int depth,
                                           double scan_step) {
    std::vector<double> out;
    double xi = 0.0;
    for (int level = 0; level < depth; ++level) {
        double next;
        if (delay.is_constant()) {
            double tau = delay.lag(0.0);
            if (tau <= kBreakpointTol)
                break;
            next = xi + tau;
        } else {
            // Smallest t > xi with theta(t) = xi. theta(xi) - xi = -lag(xi) <= 0,
            // so scan for the first sign change and bisect.
            double lo = xi;
            double g_lo = delay.theta(lo) - xi;
            if (g_lo >= -kBreakpointTol)
                break; // lag vanished at xi; the seam does not advance
            bool found = false;
            double hi = lo;
            while (hi < t_end + scan_step) {
                hi = std::min(hi + scan_step, t_end + scan_step);
                double g_hi = delay.theta(hi) - xi;
                if (g_hi >= 0.0) {
                    found = true;
                    break;
                }
                lo = hi;
                g_lo = g_hi;
            }
            if (!found)
                break;
            while (hi - lo > kBreakpointTol) {
                double mid = lo + (hi - lo) / 2.0;
                if (delay.theta(mid) - xi >= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            next = hi;
        }
        if (next > t_end || next - xi <= kBreakpointTol)
            break;
        out.push_back(next);
        xi = next;
    }
    return out;
}

Trajectory integrate(const ModelParams& params, const HistorySpec& history, double t_end,
                     const StepControl& control) {
    if (!(t_end > 0.0))
        throw std::invalid_argument("integration horizon must be positive");
    auto report = validate(params, history);
    if (!report.passes())
        throw std::invalid_argument("model rejected by validation: " + report.first_failure());

    double h_nom = control.effective_step(params.delay, params.effective_period());
    auto anchors = mesh_anchors(params.delay, t_end, control, h_nom);

    auto rhs_fn = [&params](double t, double x, double n_delayed) {
        return rhs_log(t, x, n_delayed, params);
    };
    Stepper stepper(rhs_fn, params.delay, history, /*log_space=*/true, 700.0, control);
    return stepper.run(std::log(history.n0()), t_end, anchors, h_nom);
}

Trajectory integrate_linear(const CoefficientSpec& r, const DelaySpec& delay,
                            const HistorySpec& history, double t_end,
                            const StepControl& control) {
    if (!(t_end > 0.0))
        throw std::invalid_argument("integration horizon must be positive");
    double period = r.period() ? *r.period() : 1.0;
    double h_nom = control.effective_step(delay, period);
    auto anchors = mesh_anchors(delay, t_end, control, h_nom);

    auto rhs_fn = [&r](double t, double, double x_delayed) { return -r.eval(t) * x_delayed; };
    Stepper stepper(rhs_fn, delay, history, /*log_space=*/false, 1e300, control);
    return stepper.run(history.n0(), t_end, anchors, h_nom);
}

} // namespace fishsim
