#include "pzg/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace pzg {

double gda_energy(std::span<const double> state) { return 0.5 * sq_norm(state); }

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: size mismatch");
    double kl = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (p[i] < 0.0 || q[i] <= 0.0)
            throw std::domain_error("kl_divergence: support violation");
        kl += p[i] * std::log(p[i] / q[i]);
    }
    return kl;
}

double fenchel_coupling(const PolymatrixGame& game, Regularizer reg, std::span<const double> y_flat) {
    const JointStrategy& xs = game.equilibrium();
    if (static_cast<int>(y_flat.size()) != game.total_dim())
        throw std::invalid_argument("fenchel_coupling: state size mismatch");
    double phi = 0.0;
    for (int i = 0; i < game.num_players(); ++i) {
        const auto yi = y_flat.subspan(game.offset(i), game.actions()[i]);
        phi += conjugate_value(reg, yi) - dot(xs[i], yi) + regularizer_value(reg, xs[i]);
    }
    return phi;
}

double kl_sum_to_equilibrium(const PolymatrixGame& game, std::span<const double> x_flat) {
    const JointStrategy& xs = game.equilibrium();
    if (static_cast<int>(x_flat.size()) != game.total_dim())
        throw std::invalid_argument("kl_sum_to_equilibrium: state size mismatch");
    double total = 0.0;
    for (int i = 0; i < game.num_players(); ++i)
        total += kl_divergence(xs[i], x_flat.subspan(game.offset(i), game.actions()[i]));
    return total;
}

DriftReport invariant_drift(const Trajectory& traj,
                            const std::function<double(std::span<const double>)>& functional,
                            const std::string& name) {
    if (traj.states.empty()) throw std::invalid_argument("invariant_drift: empty trajectory");
    DriftReport rep;
    rep.functional = name;
    rep.initial = functional(traj.states.front());
    for (const Vec& s : traj.states)
        rep.max_abs_drift = std::max(rep.max_abs_drift, std::abs(functional(s) - rep.initial));
    const double scale = std::abs(rep.initial);
    rep.max_rel_drift = scale > 0.0 ? rep.max_abs_drift / scale : rep.max_abs_drift;
    return rep;
}

std::vector<RecurrenceEvent> recurrence_scan(const Trajectory& traj, std::span<const double> ref,
                                             double eps, double exclude_until) {
    if (!(eps > 0.0)) throw std::invalid_argument("recurrence_scan: eps must be positive");
    const size_t n = traj.size();
    std::vector<double> dist(n);
    for (size_t k = 0; k < n; ++k) dist[k] = sup_dist(traj.states[k], ref);

    std::vector<RecurrenceEvent> events;
    for (size_t k = 0; k < n; ++k) {
        if (traj.times[k] < exclude_until) continue;
        if (dist[k] > eps) continue;
        const bool left_ok = k == 0 || dist[k] <= dist[k - 1];
        const bool right_ok = k + 1 == n || dist[k] <= dist[k + 1];
        if (left_ok && right_ok) events.push_back({traj.times[k], dist[k]});
    }
    return events;
}

Vec time_average(const Trajectory& traj) {
    if (traj.size() < 2) throw std::invalid_argument("time_average: need at least 2 samples");
    const int d = traj.dim();
    Vec acc(d, 0.0);
    for (size_t k = 0; k + 1 < traj.size(); ++k) {
        const double w = 0.5 * (traj.times[k + 1] - traj.times[k]);
        for (int i = 0; i < d; ++i) acc[i] += w * (traj.states[k][i] + traj.states[k + 1][i]);
    }
    const double span = traj.times.back() - traj.times.front();
    for (double& v : acc) v /= span;
    return acc;
}

namespace {

// Utilities u_player(x(t_k), t_k) along a strategy-space trajectory.
std::vector<double> sample_utilities(const PolymatrixGame& game, const Trajectory& x_traj,
                                     int player) {
    std::vector<double> us(x_traj.size());
    for (size_t k = 0; k < x_traj.size(); ++k) {
        const std::vector<Vec> x = split_by_actions(x_traj.states[k], game.actions());
        Vec v(game.actions()[player]);
        const double t = x_traj.times[k];
        payoff_vector_into(game, player, t, t, x, v);
        us[k] = dot(x[player], v);
    }
    return us;
}

std::vector<double> running_average(const std::vector<double>& times, const std::vector<double>& f) {
    std::vector<double> avg(times.size());
    avg[0] = f[0];
    double cum = 0.0;
    for (size_t k = 1; k < times.size(); ++k) {
        cum += 0.5 * (f[k] + f[k - 1]) * (times[k] - times[k - 1]);
        avg[k] = cum / (times[k] - times[0]);
    }
    return avg;
}

}  // namespace

Series time_average_utility(const PolymatrixGame& game, const Trajectory& x_traj, int player) {
    if (game.num_players() != 2)
        throw std::domain_error("time_average_utility: defined for 2-player games");
    if (x_traj.size() < 2) throw std::invalid_argument("time_average_utility: need >= 2 samples");
    Series out;
    out.t = x_traj.times;
    out.v = running_average(x_traj.times, sample_utilities(game, x_traj, player));
    return out;
}

Series regret(const PolymatrixGame& game, Regularizer reg, const Trajectory& y_traj, int player) {
    if (y_traj.size() < 2) throw std::invalid_argument("regret: need >= 2 samples");
    const int n = game.actions()[player];
    const int off = game.offset(player);

    // Average realized utility from the strategies Q(y(t)).
    std::vector<double> us(y_traj.size());
    std::vector<Vec> x(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) x[i].resize(game.actions()[i]);
    for (size_t k = 0; k < y_traj.size(); ++k) {
        const Vec& y = y_traj.states[k];
        for (int i = 0; i < game.num_players(); ++i)
            choice_map_into(reg, std::span<const double>(y).subspan(game.offset(i), game.actions()[i]),
                            x[i]);
        Vec v(n);
        const double t = y_traj.times[k];
        payoff_vector_into(game, player, t, t, x, v);
        us[k] = dot(x[player], v);
    }
    const std::vector<double> avg_u = running_average(y_traj.times, us);

    Series out;
    const Vec& y0 = y_traj.states.front();
    for (size_t k = 1; k < y_traj.size(); ++k) {
        const double span = y_traj.times[k] - y_traj.times.front();
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < n; ++a)
            best = std::max(best, (y_traj.states[k][off + a] - y0[off + a]) / span);
        out.t.push_back(y_traj.times[k]);
        out.v.push_back(best - avg_u[k]);
    }
    return out;
}

double volume_ratio(const VectorField& field, double period, const Vec& s, double bump,
                    const IntegratorConfig& cfg) {
    const auto map = [&](const Vec& s0) { return poincare_map(field, s0, period, 1, cfg); };
    return std::abs(det(map_jacobian_fd(map, s, bump)));
}

double half_period_symmetry_residual(const Trajectory& traj, int coordinate) {
    const size_t n = traj.size();
    if (n < 3) throw std::invalid_argument("half_period_symmetry_residual: trajectory too short");
    const double t0 = traj.times.front();
    const double t1 = traj.times.back();
    const double tol = 1e-9 * std::max(1.0, t1 - t0);
    for (size_t k = 0; k < n; ++k) {
        const double mirrored = t1 - (traj.times[n - 1 - k] - t0);
        if (std::abs(traj.times[k] - mirrored) > tol)
            throw std::invalid_argument("half_period_symmetry_residual: sampling grid not symmetric");
    }
    const int d = traj.dim();
    if (coordinate >= d) throw std::invalid_argument("half_period_symmetry_residual: bad coordinate");
    double res = 0.0;
    for (size_t k = 0; k < n; ++k) {
        const Vec& a = traj.states[k];
        const Vec& b = traj.states[n - 1 - k];
        if (coordinate >= 0) {
            res = std::max(res, std::abs(a[coordinate] - b[coordinate]));
        } else {
            for (int i = 0; i < d; ++i) res = std::max(res, std::abs(a[i] - b[i]));
        }
    }
    return res;
}

double divergence_trace(const VectorField& field, double t, const Vec& s, double bump) {
    if (!(bump > 0.0)) throw std::invalid_argument("divergence_trace: bump must be positive");
    const int n = field.dim();
    Vec sp(s), sm(s), fp(n), fm(n);
    double trace = 0.0;
    for (int i = 0; i < n; ++i) {
        sp[i] = s[i] + bump;
        sm[i] = s[i] - bump;
        field.eval(t, sp, fp);
        field.eval(t, sm, fm);
        trace += (fp[i] - fm[i]) / (2.0 * bump);
        sp[i] = s[i];
        sm[i] = s[i];
    }
    return trace;
}

}  // namespace pzg
