#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "asymlat/errors.hpp"

namespace asymlat {

// Dimensionless semiclassical parameter. Strictly positive, at most 1.
class PlanckValue {
public:
    explicit PlanckValue(double h) : h_(h) {
        if (!(h > 0.0) || !(h <= 1.0) || !std::isfinite(h))
            fail("InvalidPlanckValue", "hbar must satisfy 0 < hbar <= 1");
    }
    double value() const noexcept { return h_; }

    friend bool operator==(PlanckValue a, PlanckValue b) noexcept { return a.h_ == b.h_; }
    friend bool operator<(PlanckValue a, PlanckValue b) noexcept { return a.h_ < b.h_; }

private:
    double h_;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline bool lex_less(Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// Hash on the exact bit pattern; snapshot points are exact values, so maps
// keyed on Point2 use bitwise identity.
struct Point2Hash {
    std::size_t operator()(Point2 p) const noexcept {
        std::uint64_t a, b;
        static_assert(sizeof(double) == 8);
        __builtin_memcpy(&a, &p.x, 8);
        __builtin_memcpy(&b, &p.y, 8);
        a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
        a *= 0xff51afd7ed558ccdull;
        return static_cast<std::size_t>(a ^ (a >> 33));
    }
};

// Axis-aligned open rectangle.
struct Window {
    double xmin, xmax, ymin, ymax;

    Window(double x0, double x1, double y0, double y1)
        : xmin(x0), xmax(x1), ymin(y0), ymax(y1) {
        if (!(xmin < xmax) || !(ymin < ymax))
            fail("InvalidWindow", "window must satisfy xmin < xmax and ymin < ymax");
    }

    bool contains(Point2 p) const {
        return p.x > xmin && p.x < xmax && p.y > ymin && p.y < ymax;
    }
    // strict containment of the closure of `inner` in the open set
    bool strictly_contains(const Window& inner) const {
        return inner.xmin > xmin && inner.xmax < xmax && inner.ymin > ymin && inner.ymax < ymax;
    }
    Point2 center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }
};

// Finite 2D point set at one value of hbar, inside a window.
class SpectrumSnapshot {
public:
    SpectrumSnapshot(PlanckValue hbar, std::vector<Point2> points, Window window);

    PlanckValue hbar() const { return hbar_; }
    const Window& window() const { return window_; }
    const std::vector<Point2>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

private:
    PlanckValue hbar_;
    std::vector<Point2> points_;
    Window window_;
};

// Closest point of the snapshot to `target`, skipping `excluded`.
// Ties are broken lexicographically (smaller x, then smaller y).
Point2 nearest_point(const SpectrumSnapshot& snapshot, Point2 target,
                     const std::vector<Point2>& excluded);

// Index-based variant used by the labelling algorithms: `excluded[i]` masks
// point i out of the candidate set. Returns the index of the minimizer.
std::size_t nearest_point_index(const SpectrumSnapshot& snapshot, Point2 target,
                                const std::vector<char>& excluded);

// Minimum pairwise distance of the snapshot.
double separation_radius(const SpectrumSnapshot& snapshot);

// Snapshots at strictly decreasing hbar sharing one window.
class SpectrumFamily {
public:
    explicit SpectrumFamily(std::vector<SpectrumSnapshot> snapshots);

    const std::vector<SpectrumSnapshot>& snapshots() const { return snapshots_; }
    std::size_t size() const { return snapshots_.size(); }
    const SpectrumSnapshot& at(std::size_t i) const { return snapshots_.at(i); }
    // snapshot with this exact hbar; fails with UnknownPlanckValue otherwise
    const SpectrumSnapshot& at_hbar(PlanckValue h) const;

private:
    std::vector<SpectrumSnapshot> snapshots_;
};

} // namespace asymlat
