#include "asymlat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace asymlat {

SpectrumSnapshot::SpectrumSnapshot(PlanckValue hbar, std::vector<Point2> points, Window window)
    : hbar_(hbar), points_(std::move(points)), window_(window) {
    for (const auto& p : points_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            fail("InvalidPoint", "non-finite coordinate in snapshot");
        if (!window_.contains(p))
            fail("PointOutsideWindow", "snapshot point outside its window");
    }
    // coincident points would make every nearest-point query ambiguous
    std::vector<Point2> sorted = points_;
    std::sort(sorted.begin(), sorted.end(), lex_less);
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            fail("CoincidentPoints", "two snapshot points coincide");
}

std::size_t nearest_point_index(const SpectrumSnapshot& snapshot, Point2 target,
                                const std::vector<char>& excluded) {
    const auto& pts = snapshot.points();
    std::size_t best = pts.size();
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i < excluded.size() && excluded[i]) continue;
        double d2 = (pts[i] - target).norm2();
        if (d2 < best_d2 || (d2 == best_d2 && best < pts.size() && lex_less(pts[i], pts[best]))) {
            best = i;
            best_d2 = d2;
        }
    }
    if (best == pts.size())
        fail("EmptyCandidateSet", "no snapshot point outside the excluded set");
    return best;
}

Point2 nearest_point(const SpectrumSnapshot& snapshot, Point2 target,
                     const std::vector<Point2>& excluded) {
    const auto& pts = snapshot.points();
    std::vector<char> mask(pts.size(), 0);
    for (const auto& e : excluded)
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (pts[i] == e) mask[i] = 1;
    return pts[nearest_point_index(snapshot, target, mask)];
}

namespace {

// Grid scan: exact whenever the returned minimum is <= cell, because any
// pair closer than one cell width lands in scanned neighbor cells.
double min_pair_distance_grid(const std::vector<Point2>& pts, const Window& w, double cell) {
    int nx = std::max(1, static_cast<int>((w.xmax - w.xmin) / cell) + 1);
    int ny = std::max(1, static_cast<int>((w.ymax - w.ymin) / cell) + 1);
    auto cell_of = [&](Point2 p) {
        int cx = std::min(nx - 1, std::max(0, static_cast<int>((p.x - w.xmin) / cell)));
        int cy = std::min(ny - 1, std::max(0, static_cast<int>((p.y - w.ymin) / cell)));
        return cy * nx + cx;
    };
    std::vector<std::vector<std::uint32_t>> buckets(static_cast<std::size_t>(nx) * ny);
    for (std::uint32_t i = 0; i < pts.size(); ++i)
        buckets[cell_of(pts[i])].push_back(i);

    double best = std::numeric_limits<double>::infinity();
    for (int cy = 0; cy < ny; ++cy) {
        for (int cx = 0; cx < nx; ++cx) {
            // forward half of the 3x3 neighborhood covers every pair once
            static const int offs[][2] = {{0, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};
            for (const auto& o : offs) {
                int ox = cx + o[0], oy = cy + o[1];
                if (ox < 0 || ox >= nx || oy >= ny) continue;
                const auto& a = buckets[cy * nx + cx];
                const auto& b = buckets[oy * nx + ox];
                bool same = (o[0] == 0 && o[1] == 0);
                for (std::size_t i = 0; i < a.size(); ++i)
                    for (std::size_t j = same ? i + 1 : 0; j < b.size(); ++j)
                        best = std::min(best, (pts[a[i]] - pts[b[j]]).norm2());
            }
        }
    }
    return std::sqrt(best);
}

} // namespace

double separation_radius(const SpectrumSnapshot& snapshot) {
    const auto& pts = snapshot.points();
    if (pts.size() < 2)
        fail("TooFewPoints", "separation radius needs at least two points");

    const Window& w = snapshot.window();
    double area = (w.xmax - w.xmin) * (w.ymax - w.ymin);
    double cell = std::sqrt(area / static_cast<double>(pts.size()));
    double span = std::max(w.xmax - w.xmin, w.ymax - w.ymin);
    if (!(cell > 0.0)) cell = span;
    for (;;) {
        double r = min_pair_distance_grid(pts, w, cell);
        if (r <= cell || cell >= span) return r;
        cell = std::min(span, 2.0 * cell);
    }
}

SpectrumFamily::SpectrumFamily(std::vector<SpectrumSnapshot> snapshots)
    : snapshots_(std::move(snapshots)) {
    if (snapshots_.empty())
        fail("InvalidSchedule", "family needs at least one snapshot");
    for (std::size_t i = 1; i < snapshots_.size(); ++i) {
        if (!(snapshots_[i].hbar() < snapshots_[i - 1].hbar()))
            fail("InvalidSchedule", "hbar values must be strictly decreasing");
        const Window& a = snapshots_[i].window();
        const Window& b = snapshots_[0].window();
        if (a.xmin != b.xmin || a.xmax != b.xmax || a.ymin != b.ymin || a.ymax != b.ymax)
            fail("WindowMismatch", "family snapshots must share one window");
    }
}

const SpectrumSnapshot& SpectrumFamily::at_hbar(PlanckValue h) const {
    for (const auto& s : snapshots_)
        if (s.hbar() == h) return s;
    fail("UnknownPlanckValue", "no snapshot at the requested hbar");
}

} // namespace asymlat
