#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pzg/linalg.hpp"

namespace pzg {

// Right-hand side of a (possibly non-autonomous, piecewise-smooth) ODE.
// eval_ctx receives two times: t is where the field is evaluated, ctx selects
// the smooth piece. Integrators pass the step midpoint as ctx so that stages
// landing exactly on a breakpoint use the piece being integrated; plain
// callers use eval(t), where the two coincide.
class VectorField {
public:
    virtual ~VectorField() = default;

    virtual int dim() const = 0;
    virtual void eval_ctx(double t, double ctx, std::span<const double> s, std::span<double> ds) const = 0;
    void eval(double t, std::span<const double> s, std::span<double> ds) const { eval_ctx(t, t, s, ds); }

    // Discontinuity/kink times inside (t0, t1), strictly increasing.
    virtual std::vector<double> breakpoints(double t0, double t1) const {
        (void)t0;
        (void)t1;
        return {};
    }

    virtual std::vector<std::string> labels() const {
        std::vector<std::string> out(dim());
        for (int i = 0; i < dim(); ++i) out[i] = "s_" + std::to_string(i);
        return out;
    }
};

// Ad-hoc field from a callable; used for counterexample constructions and tests.
class FnField : public VectorField {
public:
    using EvalFn = std::function<void(double t, double ctx, std::span<const double>, std::span<double>)>;
    using BreakFn = std::function<std::vector<double>(double, double)>;

    FnField(int dim, EvalFn fn) : dim_(dim), fn_(std::move(fn)) {}
    FnField(int dim, EvalFn fn, BreakFn brk, std::vector<std::string> labels = {})
        : dim_(dim), fn_(std::move(fn)), brk_(std::move(brk)), labels_(std::move(labels)) {}

    int dim() const override { return dim_; }
    void eval_ctx(double t, double ctx, std::span<const double> s, std::span<double> ds) const override {
        fn_(t, ctx, s, ds);
    }
    std::vector<double> breakpoints(double t0, double t1) const override {
        return brk_ ? brk_(t0, t1) : std::vector<double>{};
    }
    std::vector<std::string> labels() const override {
        return labels_.empty() ? VectorField::labels() : labels_;
    }

private:
    int dim_;
    EvalFn fn_;
    BreakFn brk_;
    std::vector<std::string> labels_;
};

enum class Method { Rk4, Rk45 };

struct IntegratorConfig {
    Method method = Method::Rk4;
    double step = 0.0;          // RK4 base step; RK45 initial step
    double abs_tol = 1e-10;     // RK45
    double rel_tol = 1e-10;     // RK45
    double sample_every = 0.0;  // <= 0: record every accepted step
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<std::string> labels;

    int dim() const { return states.empty() ? 0 : static_cast<int>(states.front().size()); }
    size_t size() const { return times.size(); }
    const Vec& front() const { return states.front(); }
    const Vec& back() const { return states.back(); }
};

class DivergenceError : public std::runtime_error {
public:
    DivergenceError(double t, const std::string& what) : std::runtime_error(what), t_fail(t) {}
    double t_fail;
};

// Breakpoint-aware integration over [t0, t1]. Steps never straddle a field
// breakpoint: each smooth span is integrated with computed uniform substeps
// (RK4) or adaptively with span-end truncation (RK45). The returned samples
// always include t0, t1 and every breakpoint; sample_every > 0 thins interior
// samples to roughly that spacing.
Trajectory integrate(const VectorField& field, const Vec& s0, double t0, double t1,
                     const IntegratorConfig& cfg);

// State after exactly k periods of the flow anchored at t = 0.
Vec poincare_map(const VectorField& field, const Vec& s, double period, int k,
                 const IntegratorConfig& cfg);

// Central-difference Jacobian of a state map; column i is
// (map(s + bump e_i) - map(s - bump e_i)) / (2 bump).
Matrix map_jacobian_fd(const std::function<Vec(const Vec&)>& map, const Vec& s, double bump);

}  // namespace pzg
