#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pzg/linalg.hpp"

namespace pzg {

class ScheduleError : public std::runtime_error {
public:
    explicit ScheduleError(const std::string& what) : std::runtime_error(what) {}
};

enum class ModKind { Constant, Sine, Linear };

// Scalar time modulation of a payoff matrix within one schedule segment.
struct Modulation {
    ModKind kind = ModKind::Constant;
    double value = 0.0;                                   // Constant
    double amplitude = 0.0, omega = 0.0, phase = 0.0;     // Sine: amplitude*sin(omega*t + phase)
    double slope = 0.0, intercept = 0.0;                  // Linear: slope*t + intercept

    static Modulation constant(double v) {
        Modulation m;
        m.kind = ModKind::Constant;
        m.value = v;
        return m;
    }
    static Modulation sine(double amplitude, double omega, double phase = 0.0) {
        Modulation m;
        m.kind = ModKind::Sine;
        m.amplitude = amplitude;
        m.omega = omega;
        m.phase = phase;
        return m;
    }
    static Modulation linear(double slope, double intercept) {
        Modulation m;
        m.kind = ModKind::Linear;
        m.slope = slope;
        m.intercept = intercept;
        return m;
    }

    double operator()(double t) const {
        switch (kind) {
            case ModKind::Constant: return value;
            case ModKind::Sine: return amplitude * std::sin(omega * t + phase);
            case ModKind::Linear: return slope * t + intercept;
        }
        return 0.0;
    }
};

struct Segment {
    double t_start = 0.0;
    double t_end = 0.0;
    Modulation mod;
    std::optional<Matrix> base_override;  // general matrix schedules (sign flips, regime swaps)
};

// T-periodic, piecewise-smooth matrix schedule A(t). Segments cover [0, T)
// exactly; a boundary belongs to the segment on its right.
class PayoffSchedule {
public:
    PayoffSchedule(Matrix base, std::vector<Segment> segments, double period);

    // One full-period segment with modulation m.
    static PayoffSchedule modulated(Matrix base, Modulation m, double period);
    static PayoffSchedule constant(Matrix base, double period) {
        return modulated(std::move(base), Modulation::constant(1.0), period);
    }

    // eval(t, ctx): the segment (and period index) is resolved from ctx, the
    // modulation is evaluated at t reduced by the *same* period offset. An
    // integrator passes the step midpoint as ctx so that stage evaluations at
    // a segment's right endpoint use the segment being integrated rather than
    // the one the boundary opens.
    Matrix eval(double t, double ctx) const;
    Matrix eval(double t) const { return eval(t, t); }

    double scalar_at(double t, double ctx) const;  // modulation value (segment-resolved)

    double period() const { return period_; }
    int rows() const { return base_.rows; }
    int cols() const { return base_.cols; }
    const Matrix& base() const { return base_; }
    const std::vector<Segment>& segments() const { return segments_; }

    // Segment boundaries within [0, T): the sorted segment start times.
    std::vector<double> boundaries() const;

private:
    const Segment& segment_at(double tau) const;

    Matrix base_;
    std::vector<Segment> segments_;
    double period_ = 0.0;
};

// Reduces t into [0, period) as t - T*floor(t/T).
double reduce_period(double t, double period);

struct MixedStrategy {
    Vec probs;

    explicit MixedStrategy(Vec p) : probs(std::move(p)) { validate(probs); }
    static void validate(std::span<const double> p);
};

using JointStrategy = std::vector<Vec>;

// Two-player bilinear game on unconstrained strategy spaces; player 1's payoff
// matrix is A(t), player 2's is -A(t)^T by construction.
struct BilinearGame {
    PayoffSchedule schedule;

    int n1() const { return schedule.rows(); }
    int n2() const { return schedule.cols(); }
    double period() const { return schedule.period(); }
};

struct EdgeGame {
    int i = 0;
    int j = 0;
    PayoffSchedule a_ij;  // n_i x n_j
    PayoffSchedule a_ji;  // n_j x n_i
};

// Network of bimatrix games with periodic payoffs. The declared interior
// equilibrium is an input (Def. 2 assumes one exists); counterexample games
// may omit it, in which case equilibrium-dependent operations throw.
class PolymatrixGame {
public:
    PolymatrixGame(int num_players, std::vector<int> actions, std::vector<EdgeGame> edges,
                   std::optional<JointStrategy> equilibrium);

    int num_players() const { return num_players_; }
    const std::vector<int>& actions() const { return actions_; }
    double period() const { return period_; }
    const std::vector<EdgeGame>& edges() const { return edges_; }

    bool has_equilibrium() const { return equilibrium_.has_value(); }
    const JointStrategy& equilibrium() const;

    int total_dim() const { return total_dim_; }
    int offset(int player) const { return offsets_[player]; }

    // Incident edges of a player as (edge index, player-is-i) pairs.
    const std::vector<std::pair<int, bool>>& incident(int player) const { return incident_[player]; }

    void validate_joint(const JointStrategy& x) const;

    // Union of segment boundaries over all edge schedules, within [0, T).
    std::vector<double> boundaries() const;

private:
    int num_players_ = 0;
    std::vector<int> actions_;
    std::vector<EdgeGame> edges_;
    std::optional<JointStrategy> equilibrium_;
    double period_ = 0.0;
    int total_dim_ = 0;
    std::vector<int> offsets_;
    std::vector<std::vector<std::pair<int, bool>>> incident_;
};

Matrix matching_pennies();

// u_i(x, t) = sum over incident edges of x_i^T A^{ij}(t) x_j.
double utility(const PolymatrixGame& game, int player, double t, const JointStrategy& x);

// |sum_i u_i(x, t)|; vanishes (up to rounding) for certified zero-sum games.
double zero_sum_residual(const PolymatrixGame& game, double t, const JointStrategy& x);

// max_i max_{a,b} |v_{ia}(x*, t) - v_{ib}(x*, t)|; zero iff every pure strategy
// earns the same payoff against x*_{-i}, the interior-equilibrium condition.
double equilibrium_residual(const PolymatrixGame& game, double t);

// Value V(t) = u_1(x*, t) of a 2-player zero-sum game with declared interior
// equilibrium. Per-player values are not well-defined for >= 3 players.
double game_value(const PolymatrixGame& game, double t);

// Cycle i--(i+1 mod N), each edge carrying {m_e(t)*base, -m_e(t)*base^T} and a
// uniform declared equilibrium. One modulation per edge.
PolymatrixGame build_cycle_chain(int num_players, const std::vector<Modulation>& modulations,
                                 const Matrix& base, double period);

}  // namespace pzg
