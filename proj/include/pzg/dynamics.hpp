#pragma once

#include "pzg/games.hpp"
#include "pzg/ode.hpp"

namespace pzg {

enum class Regularizer { Entropic, Euclidean };

Regularizer parse_regularizer(const std::string& name);
std::string regularizer_name(Regularizer reg);

// Q(y) = argmax_{x in simplex} <x, y> - h(x). Entropic: softmax with
// max-subtraction (y grows linearly in t, naive exponentials overflow).
// Euclidean: projection onto the simplex via sort-then-threshold.
void choice_map_into(Regularizer reg, std::span<const double> y, std::span<double> x);
MixedStrategy choice_map(Regularizer reg, const Vec& y);

double regularizer_value(Regularizer reg, std::span<const double> x);   // h(x)
double conjugate_value(Regularizer reg, std::span<const double> y);     // h*(y)
double regularizer_range(Regularizer reg, int n);                      // h_max - h_min over the simplex

struct GdaState {
    Vec x1, x2;
};

struct FtrlState {
    std::vector<Vec> y;
};

struct ZState {
    std::vector<Vec> z;           // per player, length n_i - 1
    std::vector<int> benchmark;   // dropped action index per player
};

// v_i(x, t): pure-strategy payoffs of one player, summed over incident edges.
void payoff_vector_into(const PolymatrixGame& game, int player, double t, double ctx,
                        const std::vector<Vec>& x, std::span<double> out);
Vec payoff_vector(const PolymatrixGame& game, int player, double t, const JointStrategy& x);

// z_{ia} = y_{ia} - y_{i beta_i} with the benchmark coordinate dropped.
ZState z_reduce(const FtrlState& s, const std::vector<int>& benchmarks);
// Any lift of z back to y-space (benchmark coordinate set to 0); the choice
// map is shift-invariant, so the reduced choice map factors through this.
FtrlState z_lift(const ZState& z);

// Flat-state packing helpers shared by the fields below.
Vec flatten(const std::vector<Vec>& per_player);
std::vector<Vec> split_by_actions(std::span<const double> flat, const std::vector<int>& actions);

// GDA on a bilinear game; state [x1 | x2], dx1 = A(t) x2, dx2 = -A(t)^T x1.
class GdaField : public VectorField {
public:
    explicit GdaField(const BilinearGame& game) : game_(&game) {}

    int dim() const override { return game_->n1() + game_->n2(); }
    void eval_ctx(double t, double ctx, std::span<const double> s, std::span<double> ds) const override;
    std::vector<double> breakpoints(double t0, double t1) const override;
    std::vector<std::string> labels() const override;

private:
    const BilinearGame* game_;
};

// FTRL payoff dynamics; state is the concatenated cumulative payoff vectors y,
// dy_i = v_i(Q(y), t). Strategies are always recomputed from y, never stored.
class FtrlField : public VectorField {
public:
    FtrlField(const PolymatrixGame& game, Regularizer reg) : game_(&game), reg_(reg) {}

    int dim() const override { return game_->total_dim(); }
    void eval_ctx(double t, double ctx, std::span<const double> s, std::span<double> ds) const override;
    std::vector<double> breakpoints(double t0, double t1) const override;
    std::vector<std::string> labels() const override;

    std::vector<Vec> strategies(std::span<const double> y_flat) const;

private:
    const PolymatrixGame* game_;
    Regularizer reg_;
    mutable std::vector<Vec> x_;  // per-eval scratch; clone the field per thread
};

// Replicator dynamics on the product of simplices; state is the concatenated
// strategies, dx_{ia} = x_{ia} (v_{ia} - <v_i, x_i>).
class ReplicatorField : public VectorField {
public:
    explicit ReplicatorField(const PolymatrixGame& game) : game_(&game) {}

    int dim() const override { return game_->total_dim(); }
    void eval_ctx(double t, double ctx, std::span<const double> s, std::span<double> ds) const override;
    std::vector<double> breakpoints(double t0, double t1) const override;
    std::vector<std::string> labels() const override;

private:
    const PolymatrixGame* game_;
    mutable std::vector<Vec> x_;
    mutable Vec v_;
};

// Cumulative utility differences; state z has per-player dimension n_i - 1,
// dz_{ia} = v_{ia}(Qhat(z), t) - v_{i beta_i}(Qhat(z), t). Divergence-free in z.
class ZField : public VectorField {
public:
    ZField(const PolymatrixGame& game, Regularizer reg, std::vector<int> benchmarks);

    int dim() const override { return dim_; }
    void eval_ctx(double t, double ctx, std::span<const double> s, std::span<double> ds) const override;
    std::vector<double> breakpoints(double t0, double t1) const override;
    std::vector<std::string> labels() const override;

    const std::vector<int>& benchmarks() const { return benchmarks_; }
    // Qhat: strategies from a flat z state.
    std::vector<Vec> strategies(std::span<const double> z_flat) const;
    Vec reduce(const std::vector<Vec>& y) const;

private:
    const PolymatrixGame* game_;
    Regularizer reg_;
    std::vector<int> benchmarks_;
    int dim_ = 0;
    std::vector<int> z_offsets_;
    mutable std::vector<Vec> x_;
    mutable Vec y_, v_;
};

std::vector<double> periodic_breakpoints(const std::vector<double>& boundaries, double period,
                                         double t0, double t1);

}  // namespace pzg
