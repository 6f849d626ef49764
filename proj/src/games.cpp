#include "pzg/games.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pzg {

namespace {
constexpr double kCoverageTol = 1e-9;
}

double reduce_period(double t, double period) {
    double tau = t - period * std::floor(t / period);
    if (tau >= period) tau -= period;  // floor rounding at exact multiples
    if (tau < 0.0) tau = 0.0;
    return tau;
}

PayoffSchedule::PayoffSchedule(Matrix base, std::vector<Segment> segments, double period)
    : base_(std::move(base)), segments_(std::move(segments)), period_(period) {
    if (period_ <= 0.0) throw ScheduleError("PayoffSchedule: period must be positive");
    if (segments_.empty()) throw ScheduleError("PayoffSchedule: no segments");
    std::sort(segments_.begin(), segments_.end(),
              [](const Segment& a, const Segment& b) { return a.t_start < b.t_start; });
    double cursor = 0.0;
    for (const Segment& s : segments_) {
        if (std::abs(s.t_start - cursor) > kCoverageTol)
            throw ScheduleError("PayoffSchedule: gap or overlap at t=" + std::to_string(s.t_start));
        if (s.t_end <= s.t_start) throw ScheduleError("PayoffSchedule: empty segment");
        if (s.base_override && !s.base_override->same_shape(base_))
            throw ScheduleError("PayoffSchedule: base override shape mismatch");
        cursor = s.t_end;
    }
    if (std::abs(cursor - period_) > kCoverageTol)
        throw ScheduleError("PayoffSchedule: segments do not cover [0, T)");
}

PayoffSchedule PayoffSchedule::modulated(Matrix base, Modulation m, double period) {
    std::vector<Segment> segs(1);
    segs[0].t_start = 0.0;
    segs[0].t_end = period;
    segs[0].mod = m;
    return PayoffSchedule(std::move(base), std::move(segs), period);
}

const Segment& PayoffSchedule::segment_at(double tau) const {
    for (const Segment& s : segments_) {
        if (tau >= s.t_start && tau < s.t_end) return s;
    }
    // Coverage is validated at construction, so only boundary rounding can
    // land here; clamp to the outermost segments.
    if (tau >= segments_.back().t_end - kCoverageTol) return segments_.back();
    if (tau < segments_.front().t_start + kCoverageTol) return segments_.front();
    throw ScheduleError("PayoffSchedule: t=" + std::to_string(tau) + " falls in no segment");
}

double PayoffSchedule::scalar_at(double t, double ctx) const {
    const double shift = period_ * std::floor(ctx / period_);
    double tau_ctx = ctx - shift;
    if (tau_ctx >= period_) tau_ctx = 0.0;
    const Segment& seg = segment_at(tau_ctx);
    return seg.mod(t - shift);
}

Matrix PayoffSchedule::eval(double t, double ctx) const {
    const double shift = period_ * std::floor(ctx / period_);
    double tau_ctx = ctx - shift;
    if (tau_ctx >= period_) tau_ctx = 0.0;
    const Segment& seg = segment_at(tau_ctx);
    const Matrix& base = seg.base_override ? *seg.base_override : base_;
    return base.scaled(seg.mod(t - shift));
}

std::vector<double> PayoffSchedule::boundaries() const {
    std::vector<double> out;
    out.reserve(segments_.size());
    for (const Segment& s : segments_) out.push_back(s.t_start);
    return out;
}

void MixedStrategy::validate(std::span<const double> p) {
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) throw std::invalid_argument("MixedStrategy: negative probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("MixedStrategy: probabilities sum to " + std::to_string(sum));
}

PolymatrixGame::PolymatrixGame(int num_players, std::vector<int> actions, std::vector<EdgeGame> edges,
                               std::optional<JointStrategy> equilibrium)
    : num_players_(num_players),
      actions_(std::move(actions)),
      edges_(std::move(edges)),
      equilibrium_(std::move(equilibrium)) {
    if (num_players_ < 2) throw std::invalid_argument("PolymatrixGame: need at least 2 players");
    if (static_cast<int>(actions_.size()) != num_players_)
        throw std::invalid_argument("PolymatrixGame: actions length mismatch");
    if (edges_.empty()) throw std::invalid_argument("PolymatrixGame: no edges");

    period_ = edges_.front().a_ij.period();
    offsets_.resize(num_players_);
    for (int i = 0; i < num_players_; ++i) {
        if (actions_[i] < 1) throw std::invalid_argument("PolymatrixGame: empty action set");
        offsets_[i] = total_dim_;
        total_dim_ += actions_[i];
    }

    incident_.resize(num_players_);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        const EdgeGame& eg = edges_[e];
        if (eg.i < 0 || eg.i >= num_players_ || eg.j < 0 || eg.j >= num_players_ || eg.i == eg.j)
            throw std::invalid_argument("PolymatrixGame: bad edge endpoints");
        if (eg.a_ij.rows() != actions_[eg.i] || eg.a_ij.cols() != actions_[eg.j] ||
            eg.a_ji.rows() != actions_[eg.j] || eg.a_ji.cols() != actions_[eg.i])
            throw std::invalid_argument("PolymatrixGame: edge payoff shape mismatch");
        if (std::abs(eg.a_ij.period() - period_) > 1e-12 || std::abs(eg.a_ji.period() - period_) > 1e-12)
            throw std::invalid_argument("PolymatrixGame: edge schedules must share one period");
        incident_[eg.i].push_back({e, true});
        incident_[eg.j].push_back({e, false});
    }

    if (equilibrium_) {
        if (static_cast<int>(equilibrium_->size()) != num_players_)
            throw std::invalid_argument("PolymatrixGame: equilibrium player count mismatch");
        for (int i = 0; i < num_players_; ++i) {
            const Vec& xi = (*equilibrium_)[i];
            if (static_cast<int>(xi.size()) != actions_[i])
                throw std::invalid_argument("PolymatrixGame: equilibrium dimension mismatch");
            MixedStrategy::validate(xi);
            for (double v : xi)
                if (v <= 0.0)
                    throw std::invalid_argument("PolymatrixGame: declared equilibrium must be interior");
        }
    }
}

const JointStrategy& PolymatrixGame::equilibrium() const {
    if (!equilibrium_) throw std::domain_error("PolymatrixGame: no declared equilibrium");
    return *equilibrium_;
}

void PolymatrixGame::validate_joint(const JointStrategy& x) const {
    if (static_cast<int>(x.size()) != num_players_)
        throw std::invalid_argument("joint strategy: player count mismatch");
    for (int i = 0; i < num_players_; ++i) {
        if (static_cast<int>(x[i].size()) != actions_[i])
            throw std::invalid_argument("joint strategy: dimension mismatch for player " + std::to_string(i));
        MixedStrategy::validate(x[i]);
    }
}

std::vector<double> PolymatrixGame::boundaries() const {
    std::set<double> bs;
    for (const EdgeGame& e : edges_) {
        for (double b : e.a_ij.boundaries()) bs.insert(b);
        for (double b : e.a_ji.boundaries()) bs.insert(b);
    }
    return {bs.begin(), bs.end()};
}

Matrix matching_pennies() { return Matrix::from_rows({{1.0, -1.0}, {-1.0, 1.0}}); }

double utility(const PolymatrixGame& game, int player, double t, const JointStrategy& x) {
    if (player < 0 || player >= game.num_players())
        throw std::invalid_argument("utility: unknown player index");
    double u = 0.0;
    Vec tmp;
    for (const auto& [e, forward] : game.incident(player)) {
        const EdgeGame& eg = game.edges()[e];
        const PayoffSchedule& sched = forward ? eg.a_ij : eg.a_ji;
        const Vec& mine = x[player];
        const Vec& theirs = forward ? x[eg.j] : x[eg.i];
        tmp.assign(mine.size(), 0.0);
        add_matvec(sched.eval(t), 1.0, theirs, tmp);
        u += dot(mine, tmp);
    }
    return u;
}

double zero_sum_residual(const PolymatrixGame& game, double t, const JointStrategy& x) {
    game.validate_joint(x);
    double total = 0.0;
    for (int i = 0; i < game.num_players(); ++i) total += utility(game, i, t, x);
    return std::abs(total);
}

double equilibrium_residual(const PolymatrixGame& game, double t) {
    const JointStrategy& xs = game.equilibrium();
    double worst = 0.0;
    Vec v;
    for (int i = 0; i < game.num_players(); ++i) {
        v.assign(xs[i].size(), 0.0);
        for (const auto& [e, forward] : game.incident(i)) {
            const EdgeGame& eg = game.edges()[e];
            const PayoffSchedule& sched = forward ? eg.a_ij : eg.a_ji;
            const Vec& theirs = forward ? xs[eg.j] : xs[eg.i];
            add_matvec(sched.eval(t), 1.0, theirs, v);
        }
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        worst = std::max(worst, *hi - *lo);
    }
    return worst;
}

double game_value(const PolymatrixGame& game, double t) {
    if (game.num_players() != 2)
        throw std::domain_error("game_value: defined only for 2-player zero-sum games");
    return utility(game, 0, t, game.equilibrium());
}

PolymatrixGame build_cycle_chain(int num_players, const std::vector<Modulation>& modulations,
                                 const Matrix& base, double period) {
    if (num_players < 3) throw std::invalid_argument("build_cycle_chain: need at least 3 players");
    if (static_cast<int>(modulations.size()) != num_players)
        throw std::invalid_argument("build_cycle_chain: one modulation per edge required");
    if (base.rows != base.cols)
        throw std::invalid_argument("build_cycle_chain: base must be square");

    std::vector<EdgeGame> edges;
    edges.reserve(num_players);
    const Matrix neg_t = base.negated_transpose();
    for (int i = 0; i < num_players; ++i) {
        EdgeGame e{i, (i + 1) % num_players, PayoffSchedule::modulated(base, modulations[i], period),
                   PayoffSchedule::modulated(neg_t, modulations[i], period)};
        edges.push_back(std::move(e));
    }

    JointStrategy eq(num_players, Vec(base.rows, 1.0 / base.rows));
    return PolymatrixGame(num_players, std::vector<int>(num_players, base.rows), std::move(edges),
                          std::move(eq));
}

}  // namespace pzg
