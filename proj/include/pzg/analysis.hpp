#pragma once

#include <functional>

#include "pzg/dynamics.hpp"
#include "pzg/games.hpp"
#include "pzg/ode.hpp"

namespace pzg {

struct RecurrenceEvent {
    double t_return = 0.0;
    double distance = 0.0;
};

struct DriftReport {
    std::string functional;
    double initial = 0.0;
    double max_abs_drift = 0.0;
    double max_rel_drift = 0.0;
};

struct Series {
    std::vector<double> t, v;
};

// GDA energy: half the squared norm of the joint (x1, x2) state.
double gda_energy(std::span<const double> state);

// KL(p || q) with 0 log 0 = 0; requires supp(p) within supp(q).
double kl_divergence(std::span<const double> p, std::span<const double> q);

// Fenchel coupling sum_i (h_i*(y_i) - <x*_i, y_i> + h_i(x*_i)) against the
// game's declared interior equilibrium. For the entropic regularizer this
// equals sum_i KL(x*_i || Q_i(y_i)).
double fenchel_coupling(const PolymatrixGame& game, Regularizer reg, std::span<const double> y_flat);

// sum_i KL(x*_i || x_i) for a strategy-space state.
double kl_sum_to_equilibrium(const PolymatrixGame& game, std::span<const double> x_flat);

DriftReport invariant_drift(const Trajectory& traj,
                            const std::function<double(std::span<const double>)>& functional,
                            const std::string& name);

// Local-minimum samples with sup-norm distance to ref at most eps, after
// exclude_until. The theorem guarantees neighborhood returns; local-minimum
// filtering keeps a slow pass through the ball from flooding the output.
std::vector<RecurrenceEvent> recurrence_scan(const Trajectory& traj, std::span<const double> ref,
                                             double eps, double exclude_until);

// Trapezoidal time average of every coordinate over the whole trajectory.
Vec time_average(const Trajectory& traj);

// (1/t) integral of u_player(x(tau), tau) at every sample of a strategy-space
// trajectory of a 2-player game. Converges to the period-averaged game value.
Series time_average_utility(const PolymatrixGame& game, const Trajectory& x_traj, int player);

// FTRL regret from cumulative payoffs: max_a (y_a(t)-y_a(0))/t minus the
// running average utility. Pure strategies suffice by linearity. Bounded by
// (h_max - h_min)/t at every t.
Series regret(const PolymatrixGame& game, Regularizer reg, const Trajectory& y_traj, int player);

// |det| of the finite-difference Jacobian of the one-period Poincare map at s.
double volume_ratio(const VectorField& field, double period, const Vec& s, double bump,
                    const IntegratorConfig& cfg);

// max |x(T/2 + t) - x(T/2 - t)| over mirrored sample pairs of a trajectory
// covering [t0, t0+T]; coordinate -1 scans all coordinates. The sample grid
// must be index-symmetric about the midpoint.
double half_period_symmetry_residual(const Trajectory& traj, int coordinate = -1);

// Central-difference divergence (Jacobian trace) of the field at (t, s).
double divergence_trace(const VectorField& field, double t, const Vec& s, double bump);

}  // namespace pzg
