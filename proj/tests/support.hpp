#pragma once

// Shared test fixtures and independent oracles. Everything here is kept
// deliberately separate from the library implementation paths it checks.

#include <cmath>
#include <cstdint>
#include <vector>

#include "asymlat/chart.hpp"
#include "asymlat/geometry.hpp"
#include "asymlat/integer_affine.hpp"

namespace testsupport {

using namespace asymlat;

// small deterministic generator for test data
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) { // inclusive
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

// rejection-sampled SL(2,Z) with entries bounded by `limit`
inline UnimodularMatrix2 random_sl2z(Rng& rng, std::int64_t limit) {
    for (;;) {
        std::int64_t a = rng.integer(-limit, limit), b = rng.integer(-limit, limit);
        std::int64_t c = rng.integer(-limit, limit), d = rng.integer(-limit, limit);
        if (a * d - b * c == 1) return {a, b, c, d};
    }
}

// exact square lattice h Z^2 clipped to the open window, built without the
// chart generator
inline SpectrumSnapshot square_lattice(double h, Window w) {
    std::vector<Point2> pts;
    auto lo1 = static_cast<std::int64_t>(std::floor(w.xmin / h)) - 1;
    auto hi1 = static_cast<std::int64_t>(std::ceil(w.xmax / h)) + 1;
    auto lo2 = static_cast<std::int64_t>(std::floor(w.ymin / h)) - 1;
    auto hi2 = static_cast<std::int64_t>(std::ceil(w.ymax / h)) + 1;
    for (auto k1 = lo1; k1 <= hi1; ++k1)
        for (auto k2 = lo2; k2 <= hi2; ++k2) {
            Point2 p{h * static_cast<double>(k1), h * static_cast<double>(k2)};
            if (w.contains(p)) pts.push_back(p);
        }
    return {PlanckValue(h), std::move(pts), w};
}

// ---------------------------------------------------------------------------
// Independent spherical-pendulum oracle: trigonometric root solve for the
// cubic plus tanh-sinh quadrature on the raw integrand (no turning-point
// substitution), sharing nothing with the production path.

inline void pendulum_roots_trig(double J, double H, double& z1, double& z2, double& z3) {
    // 2 z^3 - 2H z^2 - 2 z + 2H - J^2 = 0  ->  z^3 + p z + q after depression
    double b = -H, c = -1.0, d = H - 0.5 * J * J;
    double p = c - b * b / 3.0;
    double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    arg = std::min(1.0, std::max(-1.0, arg));
    double t = std::acos(arg) / 3.0;
    double r0 = m * std::cos(t) - b / 3.0;
    double r1 = m * std::cos(t - 2.0 * M_PI / 3.0) - b / 3.0;
    double r2 = m * std::cos(t - 4.0 * M_PI / 3.0) - b / 3.0;
    z1 = std::min({r0, r1, r2});
    z3 = std::max({r0, r1, r2});
    z2 = r0 + r1 + r2 - z1 - z3;
}

inline double pendulum_w_oracle(double J, double H) {
    if (J == 0.0) return 0.5;
    double z1, z2, z3;
    pendulum_roots_trig(J, H, z1, z2, z3);
    auto P = [&](double z) { return 2.0 * (H - z) * (1.0 - z * z) - J * J; };
    // tanh-sinh nodes on (z1, z2); the 1/sqrt endpoint singularities are
    // absorbed by the double-exponential weights
    double mid = 0.5 * (z1 + z2), half = 0.5 * (z2 - z1);
    double sum = 0.0;
    const double hstep = 1e-3;
    const int N = 7000;
    for (int i = -N; i <= N; ++i) {
        double t = hstep * i;
        double u = std::tanh(0.5 * M_PI * std::sinh(t));
        double w = 0.5 * M_PI * std::cosh(t) / std::pow(std::cosh(0.5 * M_PI * std::sinh(t)), 2);
        double z = mid + half * u;
        double Pz = P(z);
        if (Pz <= 0.0) continue;
        sum += w * (J / ((1.0 - z * z) * std::sqrt(Pz)));
    }
    double dphi = 2.0 * half * hstep * sum;
    double out = dphi / (2.0 * M_PI);
    return out - std::floor(out);
}

} // namespace testsupport
