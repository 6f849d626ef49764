#include "pzg/ode.hpp"

#include <algorithm>
#include <cmath>

namespace pzg {

namespace {

void check_finite(const Vec& s, double t) {
    if (!all_finite(s))
        throw DivergenceError(t, "integration diverged (non-finite state) at t=" + std::to_string(t));
}

class Recorder {
public:
    Recorder(Trajectory& traj, double sample_every) : traj_(traj), sample_every_(sample_every) {}

    void record(double t, const Vec& s, bool forced) {
        if (!forced && sample_every_ > 0.0 && t < last_ + sample_every_ * (1.0 - 1e-12)) return;
        traj_.times.push_back(t);
        traj_.states.push_back(s);
        last_ = t;
    }

private:
    Trajectory& traj_;
    double sample_every_;
    double last_ = -std::numeric_limits<double>::infinity();
};

struct Stepper {
    const VectorField& f;
    int n;
    Vec k1, k2, k3, k4, k5, k6, k7, tmp;

    explicit Stepper(const VectorField& field)
        : f(field), n(field.dim()), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n) {}

    // Classic RK4; ctx = midpoint keeps stage evaluations on the current smooth piece.
    void rk4(double t, double h, Vec& s) {
        const double mid = t + h / 2;
        f.eval_ctx(t, mid, s, k1);
        for (int i = 0; i < n; ++i) tmp[i] = s[i] + h / 2 * k1[i];
        f.eval_ctx(mid, mid, tmp, k2);
        for (int i = 0; i < n; ++i) tmp[i] = s[i] + h / 2 * k2[i];
        f.eval_ctx(mid, mid, tmp, k3);
        for (int i = 0; i < n; ++i) tmp[i] = s[i] + h * k3[i];
        f.eval_ctx(t + h, mid, tmp, k4);
        for (int i = 0; i < n; ++i) s[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }

    // Dormand-Prince 5(4) pair; returns the embedded error estimate.
    double rk45(double t, double h, const Vec& s, Vec& out) {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                                a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                                a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                                e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

        const double ctx = t + h / 2;
        f.eval_ctx(t, ctx, s, k1);
        for (int i = 0; i < n; ++i) tmp[i] = s[i] + h * a21 * k1[i];
        f.eval_ctx(t + c2 * h, ctx, tmp, k2);
        for (int i = 0; i < n; ++i) tmp[i] = s[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f.eval_ctx(t + c3 * h, ctx, tmp, k3);
        for (int i = 0; i < n; ++i) tmp[i] = s[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f.eval_ctx(t + c4 * h, ctx, tmp, k4);
        for (int i = 0; i < n; ++i)
            tmp[i] = s[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f.eval_ctx(t + c5 * h, ctx, tmp, k5);
        for (int i = 0; i < n; ++i)
            tmp[i] = s[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f.eval_ctx(t + h, ctx, tmp, k6);
        for (int i = 0; i < n; ++i)
            out[i] = s[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f.eval_ctx(t + h, ctx, out, k7);

        double err = 0.0;
        for (int i = 0; i < n; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                  e7 * k7[i]);
            err = std::max(err, std::abs(e));
        }
        return err;
    }
};

std::vector<double> collect_stops(const VectorField& field, double t0, double t1) {
    std::vector<double> bs = field.breakpoints(t0, t1);
    std::vector<double> stops;
    stops.push_back(t0);
    for (double b : bs) {
        if (b > stops.back() + 1e-12 && b < t1 - 1e-12) stops.push_back(b);
    }
    stops.push_back(t1);
    return stops;
}

}  // namespace

Trajectory integrate(const VectorField& field, const Vec& s0, double t0, double t1,
                     const IntegratorConfig& cfg) {
    if (!(t1 > t0)) throw std::invalid_argument("integrate: t1 must exceed t0");
    if (static_cast<int>(s0.size()) != field.dim())
        throw std::invalid_argument("integrate: state dimension mismatch");
    if (cfg.method == Method::Rk4 && !(cfg.step > 0.0))
        throw std::invalid_argument("integrate: RK4 requires a positive step");

    Trajectory traj;
    traj.labels = field.labels();
    Recorder rec(traj, cfg.sample_every);

    Vec s = s0;
    check_finite(s, t0);
    rec.record(t0, s, true);

    Stepper stepper(field);
    const std::vector<double> stops = collect_stops(field, t0, t1);

    for (size_t si = 0; si + 1 < stops.size(); ++si) {
        const double a = stops[si];
        const double b = stops[si + 1];
        if (cfg.method == Method::Rk4) {
            // Computed uniform substeps: exact landing on span ends and
            // index-symmetric grids (mirror tests rely on this).
            const long n = std::max(1L, static_cast<long>(std::ceil((b - a) / cfg.step - 1e-9)));
            const double h = (b - a) / static_cast<double>(n);
            for (long k = 0; k < n; ++k) {
                const double t = a + static_cast<double>(k) * h;
                stepper.rk4(t, h, s);
                const double t_new = (k + 1 == n) ? b : a + static_cast<double>(k + 1) * h;
                check_finite(s, t_new);
                rec.record(t_new, s, k + 1 == n);
            }
        } else {
            double t = a;
            double h = cfg.step > 0.0 ? std::min(cfg.step, b - a) : (b - a) / 100.0;
            Vec snew(field.dim());
            while (t < b - 1e-13 * std::max(1.0, std::abs(b))) {
                h = std::min(h, b - t);
                const double err = stepper.rk45(t, h, s, snew);
                const double tol = cfg.abs_tol + cfg.rel_tol * sup_norm(snew);
                const bool accept = err <= tol || h <= 1e-14 * std::max(1.0, std::abs(t) + 1.0);
                if (accept) {
                    t += h;
                    const bool at_end = (b - t) <= 1e-12 * std::max(1.0, std::abs(b));
                    if (at_end) t = b;
                    s = snew;
                    check_finite(s, t);
                    rec.record(t, s, at_end);
                }
                const double scale = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
                h *= std::clamp(scale, 0.2, 5.0);
            }
        }
    }
    return traj;
}

Vec poincare_map(const VectorField& field, const Vec& s, double period, int k,
                 const IntegratorConfig& cfg) {
    if (k < 1) throw std::invalid_argument("poincare_map: k must be >= 1");
    IntegratorConfig light = cfg;
    light.sample_every = std::numeric_limits<double>::infinity();
    const Trajectory traj = integrate(field, s, 0.0, period * k, light);
    return traj.back();
}

Matrix map_jacobian_fd(const std::function<Vec(const Vec&)>& map, const Vec& s, double bump) {
    if (!(bump > 0.0)) throw std::invalid_argument("map_jacobian_fd: bump must be positive");
    const int n = static_cast<int>(s.size());
    Matrix jac(0, 0);
    for (int c = 0; c < n; ++c) {
        Vec sp = s, sm = s;
        sp[c] += bump;
        sm[c] -= bump;
        const Vec fp = map(sp);
        const Vec fm = map(sm);
        if (fp.size() != fm.size()) throw std::invalid_argument("map_jacobian_fd: inconsistent map output");
        if (c == 0) jac = Matrix(static_cast<int>(fp.size()), n);
        for (int r = 0; r < jac.rows; ++r) jac(r, c) = (fp[r] - fm[r]) / (2.0 * bump);
    }
    return jac;
}

}  // namespace pzg
