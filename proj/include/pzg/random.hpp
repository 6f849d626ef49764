#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "pzg/linalg.hpp"

namespace pzg {

// Seeded generator with hand-rolled draws. std::uniform_real_distribution is
// implementation-defined; deriving doubles from raw mt19937_64 words keeps
// seeded experiments reproducible across standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Box-Muller; draws two uniforms per call, no caching.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Vec unit_vector(int n) {
        Vec v(n);
        double s = 0.0;
        do {
            for (int i = 0; i < n; ++i) v[i] = normal();
            s = std::sqrt(sq_norm(v));
        } while (s < 1e-12);
        for (double& x : v) x /= s;
        return v;
    }

    // Interior simplex point with entries bounded away from the boundary.
    Vec interior_point(int n) {
        Vec v(n);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            v[i] = uniform(0.1, 1.0);
            s += v[i];
        }
        for (double& x : v) x /= s;
        return v;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace pzg
