#include "doctest.h"

#include <cmath>

#include "asymlat/pendulum.hpp"
#include "support.hpp"

using namespace asymlat;
using testsupport::pendulum_w_oracle;

namespace {

bool error_named(const std::function<void()>& f, const char* name) {
    try {
        f();
    } catch (const Error& e) {
        return e.name() == name;
    }
    return false;
}

} // namespace

TEST_CASE("J = 0 axis: planar pendulum gives exactly one half") {
    // frozen regression: one pole passage per reduced period, dphi = pi
    CHECK(pendulum_rotation({0.0, 0.2}) == 0.5);
    CHECK(pendulum_rotation({0.0, -0.7}) == 0.5);
    CHECK(pendulum_rotation({0.0, 0.9}) == 0.5);
    // the quadrature path approaches the same value as J -> 0
    CHECK(std::abs(pendulum_rotation({1e-4, 0.2}) - 0.5) < 1e-4 * 0.5);
}

TEST_CASE("agrees with the independent tanh-sinh oracle at regular values") {
    const double cases[][2] = {{0.3, 0.2}, {0.5, 0.0},  {0.8, 0.5}, {1.0, 0.6},
                               {0.2, -0.5}, {0.6, 0.9},  {1.5, 1.5}, {0.4, 0.7},
                               {0.9, 1.1},  {0.05, 0.0}};
    for (const auto& c : cases) {
        double w = pendulum_rotation({c[0], c[1]});
        double ref = pendulum_w_oracle(c[0], c[1]);
        CHECK(std::abs(w - ref) <= 1e-6 * std::abs(ref));
    }
}

TEST_CASE("elliptic boundary limit matches the linearized normal-mode ratio") {
    for (double zc : {-0.3, -0.5, -0.7}) {
        Point2 b = pendulum_boundary_point(zc);
        double ratio = pendulum_boundary_ratio(zc);
        double w = pendulum_rotation({b.x, b.y + 1e-4});
        CHECK(std::abs(w - ratio) < 1e-3);
    }
}

TEST_CASE("local Lipschitz self-consistency") {
    Point2 c{0.6, 0.4};
    double step = 1e-4;
    // slope estimate from central differences in H
    double wp = pendulum_rotation({c.x, c.y + step});
    double wm = pendulum_rotation({c.x, c.y - step});
    double slope = std::abs(wp - wm) / (2 * step);
    double w0 = pendulum_rotation(c);
    // nearby values stay within a margin over the estimated slope
    for (double d : {2e-4, 5e-4, 1e-3}) {
        double w = pendulum_rotation({c.x, c.y + d});
        CHECK(std::abs(w - w0) <= 3.0 * (slope + 0.1) * d);
    }
}

TEST_CASE("critical and out-of-image values are rejected") {
    // exactly on the elliptic boundary
    Point2 b = pendulum_boundary_point(-0.5);
    CHECK(error_named([&] { pendulum_rotation(b); }, "SingularValue"));
    // below the boundary (not in the image of the momentum map)
    CHECK(error_named([] { pendulum_rotation({1.2, 0.3}); }, "SingularValue"));
    // focus-focus column: J = 0 requires |H| < 1
    CHECK(error_named([] { pendulum_rotation({0.0, 1.0}); }, "SingularValue"));
    CHECK(error_named([] { pendulum_rotation({0.0, 2.0}); }, "SingularValue"));
}

TEST_CASE("turning points bracket the oscillation") {
    PendulumRoots r = pendulum_turning_points({0.5, 0.3});
    CHECK(r.z1 > -1.0);
    CHECK(r.z1 < r.z2);
    CHECK(r.z2 < 1.0);
    CHECK(r.z3 > 1.0);
    auto P = [](double z) { return 2.0 * (0.3 - z) * (1.0 - z * z) - 0.25; };
    CHECK(std::abs(P(r.z1)) < 1e-10);
    CHECK(std::abs(P(r.z2)) < 1e-10);
}
