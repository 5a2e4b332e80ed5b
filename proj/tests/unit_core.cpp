#include "doctest.h"

#include <cmath>

#include "asymlat/geometry.hpp"
#include "asymlat/integer_affine.hpp"
#include "asymlat/projective.hpp"
#include "support.hpp"

using namespace asymlat;
using testsupport::Rng;
using testsupport::random_sl2z;
using testsupport::square_lattice;

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

TEST_CASE("nearest_point on the square lattice") {
    auto snap = square_lattice(0.1, {0, 1, 0, 1});

    CHECK(nearest_point(snap, {0.52, 0.50}, {}) == Point2{0.5, 0.5});
    // equidistant pair resolves lexicographically
    CHECK(nearest_point(snap, {0.55, 0.50}, {}) == Point2{0.5, 0.5});
    // exclusion forces the next-nearest point
    CHECK(nearest_point(snap, {0.52, 0.50}, {{0.5, 0.5}}) == Point2{0.1 * 6, 0.5});

    CHECK(error_named([&] { nearest_point(snap, {0, 0}, snap.points()); },
                      "EmptyCandidateSet"));
}

TEST_CASE("nearest_point is deterministic") {
    auto snap = square_lattice(0.1, {0, 1, 0, 1});
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        Point2 t{rng.uniform(), rng.uniform()};
        Point2 a = nearest_point(snap, t, {});
        Point2 b = nearest_point(snap, t, {});
        CHECK(a == b);
    }
}

TEST_CASE("separation_radius") {
    CHECK(separation_radius(square_lattice(0.1, {0, 1, 0, 1})) == doctest::Approx(0.1));

    SpectrumSnapshot tri(PlanckValue(0.5), {{0, 0}, {0, 0.3}, {0.4, 0}}, {-1, 1, -1, 1});
    CHECK(separation_radius(tri) == doctest::Approx(0.3));

    SpectrumSnapshot one(PlanckValue(0.5), {{0, 0}}, {-1, 1, -1, 1});
    CHECK(error_named([&] { separation_radius(one); }, "TooFewPoints"));
}

TEST_CASE("snapshot invariants") {
    CHECK(error_named(
        [] { SpectrumSnapshot(PlanckValue(0.5), {{0, 0}, {0, 0}}, {-1, 1, -1, 1}); },
        "CoincidentPoints"));
    CHECK(error_named(
        [] { SpectrumSnapshot(PlanckValue(0.5), {{2, 0}}, {-1, 1, -1, 1}); },
        "PointOutsideWindow"));
    CHECK_THROWS(PlanckValue(0.0));
    CHECK_THROWS(PlanckValue(1.5));
    CHECK_THROWS(Window(1, 0, 0, 1));
}

TEST_CASE("mobius_apply matches the scalar formula") {
    // identity
    Projective1 w{2, 3};
    Projective1 r = mobius_apply(UnimodularMatrix2::identity(), w);
    CHECK(projective_same_exact(r, w));

    // [[1,1],[0,1]] on w = 2/3: scalar (a w + c)/(b w + d) = (2/3)/(2/3+1) = 2/5
    Projective1 r2 = mobius_apply({1, 1, 0, 1}, w);
    CHECK(r2.p == 2.0);
    CHECK(r2.q == 5.0);

    // infinity under [[0,-1],[1,0]]: limit of (a w + c)/(b w + d) as w -> inf
    // is a/b = 0/(-1) = 0
    Projective1 inf{1, 0};
    Projective1 r3 = mobius_apply({0, -1, 1, 0}, inf);
    CHECK(projective_same_exact(r3, Projective1{0, 1}));
    CHECK(r3.canonical().p == 0.0);
}

TEST_CASE("mobius action: composition law and rationality, exact") {
    Rng rng(42);
    for (int i = 0; i < 2000; ++i) {
        UnimodularMatrix2 A = random_sl2z(rng, 5);
        UnimodularMatrix2 B = random_sl2z(rng, 5);
        Projective1 w{static_cast<double>(rng.integer(-9, 9)),
                      static_cast<double>(rng.integer(1, 9))};
        // applying B then A equals applying the product B*A in one step
        Projective1 lhs = mobius_apply(A, mobius_apply(B, w));
        Projective1 rhs = mobius_apply(B * A, w);
        CHECK(projective_same_exact(lhs, rhs));
        // rationality: integer pairs map to integer pairs
        CHECK(lhs.p == std::floor(lhs.p));
        CHECK(lhs.q == std::floor(lhs.q));
    }
}

TEST_CASE("mobius identity fixes every point") {
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        Projective1 w{rng.uniform() * 2 - 1, rng.uniform() * 2 - 1 + 1.5};
        Projective1 r = mobius_apply(UnimodularMatrix2::identity(), w);
        Projective1 a = r.canonical(), b = w.canonical();
        CHECK(a.p == doctest::Approx(b.p));
        CHECK(a.q == doctest::Approx(b.q));
    }
}

TEST_CASE("canonical form is idempotent") {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        Projective1 w{rng.uniform() * 4 - 2, rng.uniform() * 4 - 2};
        Projective1 c1 = w.canonical();
        Projective1 c2 = c1.canonical();
        CHECK(c1.p == c2.p);
        CHECK(c1.q == c2.q);
        CHECK(std::hypot(c1.p, c1.q) == doctest::Approx(1.0));
        CHECK((c1.p > 0.0 || (c1.p == 0.0 && c1.q > 0.0)));
    }
}

TEST_CASE("projective_distance") {
    CHECK(projective_distance({1, 0}, {1, 0}) == 0.0);
    CHECK(projective_distance({1, 0}, {0, 1}) == doctest::Approx(M_PI / 2));
    CHECK(projective_distance({1, 1}, {1, 0}) == doctest::Approx(M_PI / 4));
    // antipodal representatives are the same line
    CHECK(projective_distance({1, 2}, {-1, -2}) == doctest::Approx(0.0));
}

TEST_CASE("affine_apply") {
    CHECK(affine_apply(AffineInt2::identity(), {3, -2}) == Label2{3, -2});
    AffineInt2 shear{{1, 0, 1, 1}, {0, 0}};
    CHECK(affine_apply(shear, {2, 1}) == Label2{2, 3});
    AffineInt2 shift{UnimodularMatrix2::identity(), {5, -1}};
    CHECK(affine_apply(shift, {0, 0}) == Label2{5, -1});
}

TEST_CASE("unimodular matrix algebra") {
    CHECK_THROWS(UnimodularMatrix2(1, 0, 0, -1)); // det -1 rejected
    UnimodularMatrix2 A{2, 1, 1, 1};
    CHECK(A * A.inverse() == UnimodularMatrix2::identity());
    AffineInt2 t{{1, 1, 0, 1}, {2, -1}};
    CHECK(t * t.inverse() == AffineInt2::identity());
    CHECK(t.inverse().apply(t.apply({4, 7})) == Label2{4, 7});
}

TEST_CASE("family schedule validation") {
    auto s1 = square_lattice(0.5, {0, 1, 0, 1});
    auto s2 = square_lattice(0.25, {0, 1, 0, 1});
    CHECK(SpectrumFamily({s1, s2}).size() == 2);
    CHECK(error_named([&] { SpectrumFamily({s2, s1}); }, "InvalidSchedule"));
}
