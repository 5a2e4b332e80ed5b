#include "asymlat/pendulum.hpp"

#include <cmath>
#include <functional>

namespace asymlat {

namespace {

constexpr double kBisectTol = 1e-12;
constexpr double kDegenerateGap = 1e-7; // below any regular-value gap

double cubic(double z, double J, double H) {
    return 2.0 * (H - z) * (1.0 - z * z) - J * J;
}

double bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if ((fa <= 0.0) == (fm <= 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (b - a < kBisectTol) break;
    }
    return 0.5 * (a + b);
}

struct Simpson {
    const std::function<double(double)>& f;
    double rel_tol;
    int evals = 0;
    bool failed = false;

    double run(double a, double b) {
        double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
        double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        double out = recurse(a, b, fa, fm, fb, whole, 52);
        return out;
    }

    double recurse(double a, double b, double fa, double fm, double fb, double whole,
                   int depth) {
        double m = 0.5 * (a + b);
        double lm = f(0.5 * (a + m)), rm = f(0.5 * (m + b));
        evals += 2;
        double left = (m - a) / 6.0 * (fa + 4.0 * lm + fm);
        double right = (b - m) / 6.0 * (fm + 4.0 * rm + fb);
        double err = left + right - whole;
        if (std::abs(err) <= 15.0 * rel_tol * std::abs(left + right) || depth <= 0) {
            if (depth <= 0) failed = true;
            return left + right + err / 15.0;
        }
        return recurse(a, m, fa, lm, fm, left, depth - 1) +
               recurse(m, b, fm, rm, fb, right, depth - 1);
    }
};

} // namespace

PendulumRoots pendulum_turning_points(Point2 c) {
    double J = c.x, H = c.y;
    if (!std::isfinite(J) || !std::isfinite(H))
        fail("SingularValue", "non-finite energy-momentum value");

    if (J == 0.0) {
        if (!(std::abs(H) < 1.0))
            fail("SingularValue", "J = 0 requires |H| < 1 for a libration torus");
        return {-1.0, H, 1.0};
    }

    // local max of the cubic between the oscillation roots
    double s = std::sqrt(H * H + 3.0);
    double zM = (H - s) / 3.0, zm = (H + s) / 3.0;
    if (!(cubic(zM, J, H) > 0.0))
        fail("SingularValue", "c is on or below the elliptic boundary");

    auto f = [&](double z) { return cubic(z, J, H); };
    double z1 = bisect(f, -1.0, zM);
    double z2 = bisect(f, zM, zm);
    if (z2 - z1 < kDegenerateGap)
        fail("SingularValue", "degenerate oscillation interval");
    double z3 = H - z1 - z2; // the cubic is 2 z^3 - 2H z^2 - ...; roots sum to H
    return {z1, z2, z3};
}

double pendulum_rotation(Point2 c, double rel_tol) {
    double J = c.x;
    PendulumRoots r = pendulum_turning_points(c);

    if (J == 0.0) {
        // each pole passage advances the azimuth by pi; the integral term
        // vanishes with J, so the rotation number is exactly one half
        return 0.5;
    }

    // z = z1 + (z2 - z1) sin^2 psi removes both endpoint singularities:
    // dz / sqrt((z - z1)(z2 - z)) = 2 dpsi and P = 2 (z-z1)(z2-z)(z3-z)
    double z1 = r.z1, z2 = r.z2, z3 = r.z3;
    auto integrand = [&](double psi) {
        double sp = std::sin(psi);
        double z = z1 + (z2 - z1) * sp * sp;
        return 2.0 * J / ((1.0 - z * z) * std::sqrt(2.0 * (z3 - z)));
    };
    Simpson quad{integrand, rel_tol};
    double dphi = 2.0 * quad.run(0.0, 0.5 * M_PI);
    if (quad.failed)
        fail("QuadratureFailure", "adaptive quadrature did not reach tolerance");

    double w = dphi / (2.0 * M_PI);
    w -= std::floor(w);
    return w;
}

double pendulum_boundary_ratio(double zc) {
    if (!(zc > -1.0 && zc < 0.0))
        fail("SingularValue", "relative equilibria exist for zc in (-1,0)");
    return 1.0 / std::sqrt(1.0 + 3.0 * zc * zc);
}

Point2 pendulum_boundary_point(double zc) {
    if (!(zc > -1.0 && zc < 0.0))
        fail("SingularValue", "relative equilibria exist for zc in (-1,0)");
    double one = 1.0 - zc * zc;
    double J2 = -one * one / zc;
    return {std::sqrt(J2), J2 / (2.0 * one) + zc};
}

} // namespace asymlat
