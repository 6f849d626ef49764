#include "pzg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pzg {

Regularizer parse_regularizer(const std::string& name) {
    if (name == "entropic") return Regularizer::Entropic;
    if (name == "euclidean") return Regularizer::Euclidean;
    throw std::invalid_argument("unknown regularizer '" + name + "' (expected entropic|euclidean)");
}

std::string regularizer_name(Regularizer reg) {
    return reg == Regularizer::Entropic ? "entropic" : "euclidean";
}

namespace {

void softmax_into(std::span<const double> y, std::span<double> x) {
    const double m = *std::max_element(y.begin(), y.end());
    double sum = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
        x[i] = std::exp(y[i] - m);
        sum += x[i];
    }
    for (size_t i = 0; i < y.size(); ++i) x[i] /= sum;
}

// Euclidean projection onto the simplex, sort-then-threshold.
void project_simplex_into(std::span<const double> y, std::span<double> x) {
    const int n = static_cast<int>(y.size());
    std::vector<double> u(y.begin(), y.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumsum = 0.0;
    double tau = 0.0;
    int support = 0;
    for (int k = 0; k < n; ++k) {
        cumsum += u[k];
        const double cand = (cumsum - 1.0) / (k + 1);
        if (u[k] - cand > 0.0) {
            tau = cand;
            support = k + 1;
        }
    }
    (void)support;
    for (int i = 0; i < n; ++i) x[i] = std::max(y[i] - tau, 0.0);
}

}  // namespace

void choice_map_into(Regularizer reg, std::span<const double> y, std::span<double> x) {
    if (y.empty() || y.size() != x.size()) throw std::invalid_argument("choice_map: size mismatch");
    for (double v : y)
        if (!std::isfinite(v)) throw std::domain_error("choice_map: non-finite payoff vector");
    if (reg == Regularizer::Entropic)
        softmax_into(y, x);
    else
        project_simplex_into(y, x);
}

MixedStrategy choice_map(Regularizer reg, const Vec& y) {
    Vec x(y.size());
    choice_map_into(reg, y, x);
    return MixedStrategy(std::move(x));
}

double regularizer_value(Regularizer reg, std::span<const double> x) {
    if (reg == Regularizer::Entropic) {
        double h = 0.0;
        for (double v : x) {
            if (v < 0.0) throw std::domain_error("regularizer_value: negative probability");
            if (v > 0.0) h += v * std::log(v);
        }
        return h;
    }
    return 0.5 * sq_norm(x);
}

double conjugate_value(Regularizer reg, std::span<const double> y) {
    if (reg == Regularizer::Entropic) {
        // log-sum-exp with max subtraction
        const double m = *std::max_element(y.begin(), y.end());
        double sum = 0.0;
        for (double v : y) sum += std::exp(v - m);
        return m + std::log(sum);
    }
    Vec x(y.size());
    project_simplex_into(y, x);
    return dot(x, y) - 0.5 * sq_norm(x);
}

double regularizer_range(Regularizer reg, int n) {
    if (n < 1) throw std::invalid_argument("regularizer_range: empty simplex");
    // Both regularizers attain their max at a vertex and their min at the
    // uniform point of the simplex.
    if (reg == Regularizer::Entropic) return std::log(static_cast<double>(n));
    return 0.5 - 0.5 / static_cast<double>(n);
}

void payoff_vector_into(const PolymatrixGame& game, int player, double t, double ctx,
                        const std::vector<Vec>& x, std::span<double> out) {
    if (player < 0 || player >= game.num_players())
        throw std::invalid_argument("payoff_vector: unknown player index");
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& [e, forward] : game.incident(player)) {
        const EdgeGame& eg = game.edges()[e];
        const PayoffSchedule& sched = forward ? eg.a_ij : eg.a_ji;
        const Vec& theirs = forward ? x[eg.j] : x[eg.i];
        add_matvec(sched.eval(t, ctx), 1.0, theirs, out);
    }
}

Vec payoff_vector(const PolymatrixGame& game, int player, double t, const JointStrategy& x) {
    game.validate_joint(x);
    Vec out(game.actions()[player]);
    payoff_vector_into(game, player, t, t, x, out);
    return out;
}

ZState z_reduce(const FtrlState& s, const std::vector<int>& benchmarks) {
    if (benchmarks.size() != s.y.size()) throw std::invalid_argument("z_reduce: benchmark count mismatch");
    ZState out;
    out.benchmark = benchmarks;
    out.z.resize(s.y.size());
    for (size_t i = 0; i < s.y.size(); ++i) {
        const Vec& yi = s.y[i];
        const int beta = benchmarks[i];
        if (beta < 0 || beta >= static_cast<int>(yi.size()))
            throw std::invalid_argument("z_reduce: benchmark out of range");
        Vec zi;
        zi.reserve(yi.size() - 1);
        for (int a = 0; a < static_cast<int>(yi.size()); ++a)
            if (a != beta) zi.push_back(yi[a] - yi[beta]);
        out.z[i] = std::move(zi);
    }
    return out;
}

FtrlState z_lift(const ZState& z) {
    FtrlState out;
    out.y.resize(z.z.size());
    for (size_t i = 0; i < z.z.size(); ++i) {
        const int beta = z.benchmark[i];
        Vec yi(z.z[i].size() + 1, 0.0);
        int k = 0;
        for (int a = 0; a < static_cast<int>(yi.size()); ++a)
            if (a != beta) yi[a] = z.z[i][k++];
        out.y[i] = std::move(yi);
    }
    return out;
}

Vec flatten(const std::vector<Vec>& per_player) {
    Vec out;
    for (const Vec& v : per_player) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<Vec> split_by_actions(std::span<const double> flat, const std::vector<int>& actions) {
    std::vector<Vec> out(actions.size());
    size_t k = 0;
    for (size_t i = 0; i < actions.size(); ++i) {
        out[i].assign(flat.begin() + k, flat.begin() + k + actions[i]);
        k += actions[i];
    }
    if (k != flat.size()) throw std::invalid_argument("split_by_actions: length mismatch");
    return out;
}

std::vector<double> periodic_breakpoints(const std::vector<double>& boundaries, double period,
                                         double t0, double t1) {
    std::vector<double> out;
    if (boundaries.empty()) return out;
    const long k0 = static_cast<long>(std::floor(t0 / period)) - 1;
    const long k1 = static_cast<long>(std::ceil(t1 / period)) + 1;
    for (long k = k0; k <= k1; ++k) {
        for (double b : boundaries) {
            const double t = k * period + b;
            if (t > t0 + 1e-12 && t < t1 - 1e-12) out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void GdaField::eval_ctx(double t, double ctx, std::span<const double> s, std::span<double> ds) const {
    const int n1 = game_->n1();
    const int n2 = game_->n2();
    if (static_cast<int>(s.size()) != n1 + n2) throw std::invalid_argument("GdaField: state size mismatch");
    const Matrix a = game_->schedule.eval(t, ctx);
    auto x1 = s.subspan(0, n1);
    auto x2 = s.subspan(n1, n2);
    matvec(a, x2, ds.subspan(0, n1));
    std::fill(ds.begin() + n1, ds.end(), 0.0);
    add_matvec(a.transposed(), -1.0, x1, ds.subspan(n1, n2));
}

std::vector<double> GdaField::breakpoints(double t0, double t1) const {
    return periodic_breakpoints(game_->schedule.boundaries(), game_->period(), t0, t1);
}

std::vector<std::string> GdaField::labels() const {
    std::vector<std::string> out;
    for (int i = 0; i < game_->n1(); ++i) out.push_back("x1_" + std::to_string(i));
    for (int i = 0; i < game_->n2(); ++i) out.push_back("x2_" + std::to_string(i));
    return out;
}

std::vector<Vec> FtrlField::strategies(std::span<const double> y_flat) const {
    std::vector<Vec> x(game_->num_players());
    for (int i = 0; i < game_->num_players(); ++i) {
        const int n = game_->actions()[i];
        x[i].resize(n);
        choice_map_into(reg_, y_flat.subspan(game_->offset(i), n), x[i]);
    }
    return x;
}

void FtrlField::eval_ctx(double t, double ctx, std::span<const double> s, std::span<double> ds) const {
    const int np = game_->num_players();
    if (x_.empty()) {
        x_.resize(np);
        for (int i = 0; i < np; ++i) x_[i].resize(game_->actions()[i]);
    }
    for (int i = 0; i < np; ++i)
        choice_map_into(reg_, s.subspan(game_->offset(i), game_->actions()[i]), x_[i]);
    for (int i = 0; i < np; ++i)
        payoff_vector_into(*game_, i, t, ctx, x_, ds.subspan(game_->offset(i), game_->actions()[i]));
}

std::vector<double> FtrlField::breakpoints(double t0, double t1) const {
    return periodic_breakpoints(game_->boundaries(), game_->period(), t0, t1);
}

std::vector<std::string> FtrlField::labels() const {
    std::vector<std::string> out;
    for (int i = 0; i < game_->num_players(); ++i)
        for (int a = 0; a < game_->actions()[i]; ++a)
            out.push_back("y" + std::to_string(i) + "_" + std::to_string(a));
    return out;
}

void ReplicatorField::eval_ctx(double t, double ctx, std::span<const double> s,
                               std::span<double> ds) const {
    const int np = game_->num_players();
    if (x_.empty()) x_.resize(np);
    for (int i = 0; i < np; ++i) {
        const int n = game_->actions()[i];
        x_[i].assign(s.begin() + game_->offset(i), s.begin() + game_->offset(i) + n);
    }
    for (int i = 0; i < np; ++i) {
        const int n = game_->actions()[i];
        v_.resize(n);
        payoff_vector_into(*game_, i, t, ctx, x_, v_);
        const double u = dot(x_[i], v_);
        auto dsi = ds.subspan(game_->offset(i), n);
        for (int a = 0; a < n; ++a) dsi[a] = x_[i][a] * (v_[a] - u);
    }
}

std::vector<double> ReplicatorField::breakpoints(double t0, double t1) const {
    return periodic_breakpoints(game_->boundaries(), game_->period(), t0, t1);
}

std::vector<std::string> ReplicatorField::labels() const {
    std::vector<std::string> out;
    for (int i = 0; i < game_->num_players(); ++i)
        for (int a = 0; a < game_->actions()[i]; ++a)
            out.push_back("x" + std::to_string(i) + "_" + std::to_string(a));
    return out;
}

ZField::ZField(const PolymatrixGame& game, Regularizer reg, std::vector<int> benchmarks)
    : game_(&game), reg_(reg), benchmarks_(std::move(benchmarks)) {
    if (benchmarks_.empty()) {
        benchmarks_.resize(game.num_players());
        for (int i = 0; i < game.num_players(); ++i) benchmarks_[i] = game.actions()[i] - 1;
    }
    if (static_cast<int>(benchmarks_.size()) != game.num_players())
        throw std::invalid_argument("ZField: benchmark count mismatch");
    z_offsets_.resize(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) {
        if (benchmarks_[i] < 0 || benchmarks_[i] >= game.actions()[i])
            throw std::invalid_argument("ZField: benchmark out of range");
        z_offsets_[i] = dim_;
        dim_ += game.actions()[i] - 1;
    }
}

std::vector<Vec> ZField::strategies(std::span<const double> z_flat) const {
    std::vector<Vec> x(game_->num_players());
    Vec y;
    for (int i = 0; i < game_->num_players(); ++i) {
        const int n = game_->actions()[i];
        y.assign(n, 0.0);
        int k = 0;
        for (int a = 0; a < n; ++a)
            if (a != benchmarks_[i]) y[a] = z_flat[z_offsets_[i] + k++];
        x[i].resize(n);
        choice_map_into(reg_, y, x[i]);
    }
    return x;
}

Vec ZField::reduce(const std::vector<Vec>& y) const {
    FtrlState s{y};
    return flatten(z_reduce(s, benchmarks_).z);
}

void ZField::eval_ctx(double t, double ctx, std::span<const double> s, std::span<double> ds) const {
    const int np = game_->num_players();
    if (x_.empty()) {
        x_.resize(np);
        for (int i = 0; i < np; ++i) x_[i].resize(game_->actions()[i]);
    }
    for (int i = 0; i < np; ++i) {
        const int n = game_->actions()[i];
        y_.assign(n, 0.0);
        int k = 0;
        for (int a = 0; a < n; ++a)
            if (a != benchmarks_[i]) y_[a] = s[z_offsets_[i] + k++];
        choice_map_into(reg_, y_, x_[i]);
    }
    for (int i = 0; i < np; ++i) {
        const int n = game_->actions()[i];
        v_.resize(n);
        payoff_vector_into(*game_, i, t, ctx, x_, v_);
        int k = 0;
        for (int a = 0; a < n; ++a)
            if (a != benchmarks_[i]) ds[z_offsets_[i] + k++] = v_[a] - v_[benchmarks_[i]];
    }
}

std::vector<double> ZField::breakpoints(double t0, double t1) const {
    return periodic_breakpoints(game_->boundaries(), game_->period(), t0, t1);
}

std::vector<std::string> ZField::labels() const {
    std::vector<std::string> out;
    for (int i = 0; i < game_->num_players(); ++i) {
        int k = 0;
        for (int a = 0; a < game_->actions()[i]; ++a)
            if (a != benchmarks_[i]) out.push_back("z" + std::to_string(i) + "_" + std::to_string(k++));
    }
    return out;
}

}  // namespace pzg
