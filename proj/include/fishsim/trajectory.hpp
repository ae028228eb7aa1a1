#ifndef FISHSIM_TRAJECTORY_HPP
#define FISHSIM_TRAJECTORY_HPP

#include "fishsim/model.hpp"

#include <cstddef>
#include <vector>

namespace fishsim {

/** Numerical solution on [start, end] with dense output.
 *
 * The mesh stores the integration state and its derivative at every point;
 * between mesh points the state follows the cubic Hermite interpolant of the
 * containing segment. Nonlinear runs integrate x = ln N and evaluate to
 * biomass exp(x), which keeps every evaluated value positive; linear runs
 * store the perturbation directly. Times before start are served by the
 * initial history. Immutable once built. */
class Trajectory {
public:
    /// log_space: mesh state is ln of the evaluated value.
    Trajectory(std::vector<double> times, std::vector<double> states,
               std::vector<double> derivs, HistorySpec history, bool log_space);

    /// Value (biomass or perturbation) at any t in [history, end]; exact at
    /// mesh points, history passthrough for t < start.
    double eval(double t) const;
    /// Integration-coordinate state (ln N for nonlinear runs).
    double eval_state(double t) const;

    double start() const { return times_.front(); }
    double end() const { return times_.back(); }
    std::size_t size() const { return times_.size(); }
    const std::vector<double>& times() const { return times_; }
    /// Mesh values in evaluation units (biomass for nonlinear runs).
    const std::vector<double>& values() const { return values_; }
    const HistorySpec& history() const { return history_; }
    bool log_space() const { return log_space_; }

private:
    double hermite(std::size_t seg, double t) const;

    std::vector<double> times_, states_, derivs_, values_;
    HistorySpec history_;
    bool log_space_;
};

/// Free-function form of dense evaluation.
double dense_eval(const Trajectory& traj, double t);

} // namespace fishsim

#endif
