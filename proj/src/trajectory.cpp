#include "fishsim/trajectory.hpp"

#include "fishsim/csv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fishsim {

Trajectory::Trajectory(std::vector<double> times, std::vector<double> states,
                       std::vector<double> derivs, HistorySpec history, bool log_space)
    : times_(std::move(times)), states_(std::move(states)), derivs_(std::move(derivs)),
      history_(std::move(history)), log_space_(log_space) {
    if (times_.size() < 2 || times_.size() != states_.size() ||
        times_.size() != derivs_.size())
        throw std::invalid_argument("trajectory needs matching mesh arrays, >= 2 points");
    values_.resize(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i)
        values_[i] = log_space_ ? std::exp(states_[i]) : states_[i];
}

double Trajectory::hermite(std::size_t seg, double t) const {
    double t0 = times_[seg], t1 = times_[seg + 1];
    double h = t1 - t0;
    double u = (t - t0) / h;
    double u2 = u * u;
    double omu = 1.0 - u;
    double h00 = (1.0 + 2.0 * u) * omu * omu;
    double h10 = u * omu * omu;
    double h01 = u2 * (3.0 - 2.0 * u);
    double h11 = u2 * (u - 1.0);
    return h00 * states_[seg] + h * h10 * derivs_[seg] + h01 * states_[seg + 1] +
           h * h11 * derivs_[seg + 1];
}

double Trajectory::eval_state(double t) const {
    double slack = 1e-12 * std::max(1.0, std::abs(end()));
    if (t > end() + slack)
        throw std::out_of_range("dense evaluation at t = " + format_double_shortest(t) +
                                " beyond trajectory end " + format_double_shortest(end()));
    if (t >= end()) return states_.back();
    if (t <= start()) {
        if (t == start()) return states_.front();
        throw std::out_of_range("eval_state before trajectory start; use eval()");
    }
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t seg = std::size_t(it - times_.begin()) - 1;
    if (times_[seg] == t) return states_[seg];
    return hermite(seg, t);
}

double Trajectory::eval(double t) const {
    if (t < start()) return history_.phi(t);
    double x = eval_state(t);
    return log_space_ ? std::exp(x) : x;
}

double dense_eval(const Trajectory& traj, double t) { return traj.eval(t); }

} // namespace fishsim
