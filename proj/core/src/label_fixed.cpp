#include "asymlat/label_fixed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <unordered_map>

namespace asymlat {

namespace {

// Tilt of the canonical half-plane used to pick one representative of a
// +-direction pair. Off-axis so that lattice directions of the supported
// charts stay clear of the boundary.
constexpr double kCanonicalTilt = 0.1234567;
// Relative width of the near-minimal distance band in the seed selection.
constexpr double kSeedBand = 0.05;

Point2 canonical_rep(Point2 v) {
    double s = std::sin(kCanonicalTilt), c = std::cos(kCanonicalTilt);
    double f = v.x * s + v.y * c;
    if (f > 0.0 || (f == 0.0 && (v.x * c - v.y * s) > 0.0)) return {-v.x, -v.y};
    return v;
}

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

// Twelve-step engine over one snapshot. Points are handled by index; the
// labelled mask doubles as the exclusion set of the "closest point
// to ..." queries.
class Engine {
public:
    Engine(const SpectrumSnapshot& snapshot, const AlgoConfig& config)
        : snap_(snapshot), cfg_(config), pts_(snapshot.points()),
          labelled_(pts_.size(), 0), label_of_(pts_.size()) {
        if (!snapshot.window().strictly_contains(cfg_.inner_window))
            fail("InvalidConfig", "inner window must lie strictly inside the snapshot window");
        if (!cfg_.inner_window.contains(cfg_.center))
            fail("InvalidConfig", "center must lie in the inner window");
        max_steps_ = cfg_.max_steps ? cfg_.max_steps : 10 * pts_.size();
        in_b0_.resize(pts_.size());
        std::size_t inside = 0;
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            in_b0_[i] = cfg_.inner_window.contains(pts_[i]);
            inside += in_b0_[i] ? 1 : 0;
        }
        if (inside < 3)
            fail("TooFewPoints", "need at least three points in the inner window");
    }

    AffineBasis seed() {
        // step 2: origin is a closest point to c
        origin_ = match(cfg_.center);
        put(origin_, {0, 0});

        // step 3: east from the near-minimal band around the origin
        east_ = pick_neighbor(std::nullopt);
        put(east_, {1, 0});

        // step 4: the (n,0) row, both directions
        fill_row_east(0);
        fill_row_west(0, pts_[east_] - pts_[origin_]);

        // step 5: north, excluding everything labelled so far
        Point2 v1 = pts_[east_] - pts_[origin_];
        north_ = pick_neighbor(v1);
        put(north_, {0, 1});

        Point2 v2 = pts_[north_] - pts_[origin_];
        if (std::abs(cross(v1, v2)) <= 1e-12 * snap_.hbar().value())
            fail("DegenerateBasis", "seed vectors are colinear");
        return {pts_[origin_], pts_[east_], pts_[north_], v1, v2};
    }

    void adopt_basis(const AffineBasis& basis) {
        origin_ = index_of(basis.origin);
        east_ = index_of(basis.east);
        north_ = index_of(basis.north);
        put(origin_, {0, 0});
        put(east_, {1, 0});
        put(north_, {0, 1}); // protect the given basis from row matches
        fill_row_east(0);
        fill_row_west(0, basis.v1);
    }

    // steps 6-11
    void fill_plane() {
        extend_rows(+1);
        extend_rows(-1);
    }

    // step 12: make the emitted basis oriented
    LabelWindowResult emit(LabellingKind kind) {
        Point2 v1 = pts_[east_] - pts_[origin_];
        Point2 v2 = pts_[north_] - pts_[origin_];
        bool swap = cross(v1, v2) < 0.0;
        Labelling out(snap_.hbar(), cfg_.inner_window, kind);
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            if (!labelled_[i]) continue;
            Label2 k = label_of_[i];
            if (swap) k = {k.m, k.n};
            out.assign(pts_[i], k);
        }
        std::vector<Point2> unlabelled;
        for (std::size_t i = 0; i < pts_.size(); ++i)
            if (in_b0_[i] && !labelled_[i]) unlabelled.push_back(pts_[i]);
        std::sort(unlabelled.begin(), unlabelled.end(), lex_less);
        AffineBasis basis{pts_[origin_], pts_[east_], pts_[north_],
                          pts_[east_] - pts_[origin_], pts_[north_] - pts_[origin_]};
        if (swap) {
            std::swap(basis.east, basis.north);
            std::swap(basis.v1, basis.v2);
        }
        return {std::move(out), std::move(unlabelled), basis};
    }

private:
    std::size_t index_of(Point2 p) const {
        for (std::size_t i = 0; i < pts_.size(); ++i)
            if (pts_[i] == p) return i;
        fail("UnknownPoint", "basis point is not in the snapshot");
    }

    std::size_t match(Point2 target) {
        if (++steps_ > max_steps_)
            fail("SafetyCapExceeded", "labelling exceeded the step cap");
        return nearest_point_index(snap_, target, labelled_);
    }

    bool exhausted() const { return labelled_count_ == pts_.size(); }

    void put(std::size_t idx, Label2 k) {
        labelled_[idx] = 1;
        ++labelled_count_;
        label_of_[idx] = k;
        by_label_[k] = idx;
    }

    std::optional<std::size_t> find(Label2 k) const {
        auto it = by_label_.find(k);
        if (it == by_label_.end()) return std::nullopt;
        return it->second;
    }

    // East/north seed point: among unlabelled points whose distance to the
    // origin is within a 5% band of the minimum (and, when `row_axis` is
    // set, which are not within ~0.6 degrees of it), take the point nearest
    // to origin + r where r is the lexicographically smallest canonical
    // direction representative in the band. Stable under O(h^2)
    // perturbations; reproduces the plain lexicographic choice on exact
    // ties.
    std::size_t pick_neighbor(std::optional<Point2> row_axis) {
        Point2 o = pts_[origin_];
        auto admissible = [&](std::size_t i) {
            if (labelled_[i]) return false;
            if (row_axis) {
                Point2 w = pts_[i] - o;
                if (std::abs(cross(*row_axis, w)) <= 0.01 * row_axis->norm() * w.norm())
                    return false;
            }
            return true;
        };
        double best_d2 = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pts_.size(); ++i)
            if (admissible(i)) best_d2 = std::min(best_d2, (pts_[i] - o).norm2());
        if (!std::isfinite(best_d2))
            fail(row_axis ? "DegenerateBasis" : "TooFewPoints",
                 "no candidate for the seed basis");
        double band = best_d2 * (1.0 + kSeedBand) * (1.0 + kSeedBand);
        std::optional<Point2> best;
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            if (!admissible(i) || (pts_[i] - o).norm2() > band) continue;
            Point2 rep = canonical_rep(pts_[i] - o);
            if (!best || lex_less(rep, *best)) best = rep;
        }
        std::size_t cand = match(o + *best);
        if ((pts_[cand] - o).norm2() <= band * (1.0 + 1e-9) && admissible(cand)) return cand;
        // the canonical mirror may be missing near the window edge; fall
        // back to the nearest admissible point, ties lexicographic
        std::size_t fb = pts_.size();
        double fd = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            if (!admissible(i)) continue;
            double d2 = (pts_[i] - o).norm2();
            if (d2 < fd || (d2 == fd && fb < pts_.size() && lex_less(pts_[i], pts_[fb]))) {
                fb = i;
                fd = d2;
            }
        }
        return fb;
    }

    // A transported match is accepted only inside B0 and within half a step
    // of its target; near the snapshot boundary the true continuation is
    // missing and the nearest leftover point belongs to another row.
    std::optional<std::size_t> guarded_match(Point2 target, Point2 step) {
        std::size_t cand = match(target);
        if (!in_b0_[cand]) return std::nullopt;
        if (!((pts_[cand] - target).norm() <= 0.5 * step.norm())) return std::nullopt;
        return cand;
    }

    // step 4 east half: targets extrapolate the two previous row points
    void fill_row_east(std::int64_t m) {
        for (std::int64_t n = 2; !exhausted(); ++n) {
            auto a = find({n - 1, m}), b = find({n - 2, m});
            if (!a || !b) return;
            Point2 step = pts_[*a] - pts_[*b];
            auto cand = guarded_match(pts_[*a] + step, step);
            if (!cand) return;
            put(*cand, {n, m});
        }
    }

    void fill_row_west(std::int64_t m, Point2 hvec) {
        for (std::int64_t n = -1; !exhausted(); --n) {
            auto a = find({n + 1, m}), b = find({n + 2, m});
            Point2 step;
            if (a && b)
                step = pts_[*b] - pts_[*a];
            else if (a)
                step = hvec; // row has only its (0,m) point yet
            else
                return;
            auto cand = guarded_match(pts_[*a] - step, step);
            if (!cand) return;
            put(*cand, {n, m});
        }
    }

    // steps 6-9 (dir=+1) and 10-11 (dir=-1)
    void extend_rows(int dir) {
        Point2 hvec = pts_[east_] - pts_[origin_]; // inherited horizontal step
        for (std::int64_t m = dir;; m += dir) {
            std::optional<std::size_t> base = find({0, m});
            if (!base) {
                if (exhausted()) return;
                // rows beyond the seed: extrapolate the previous two starts
                auto a = find({0, m - dir}), b = find({0, m - 2 * dir});
                if (!a || !b) return;
                Point2 step = pts_[*a] - pts_[*b];
                base = guarded_match(pts_[*a] + step, step);
                if (!base) return;
                put(*base, {0, m});
            }
            // the row's (1,m) point; direction from the row below/above
            if (auto prev0 = find({0, m - dir})) {
                if (auto prev1 = find({1, m - dir}))
                    hvec = pts_[*prev1] - pts_[*prev0];
            }
            if (!find({1, m}) && !exhausted()) {
                if (auto cand = guarded_match(pts_[*base] + hvec, hvec))
                    put(*cand, {1, m});
            }
            fill_row_east(m);
            if (auto e1 = find({1, m}))
                fill_row_west(m, pts_[*e1] - pts_[*base]);
            else
                fill_row_west(m, hvec);
        }
    }

    const SpectrumSnapshot& snap_;
    AlgoConfig cfg_;
    const std::vector<Point2>& pts_;
    std::vector<char> labelled_;
    std::vector<char> in_b0_;
    std::vector<Label2> label_of_;
    std::unordered_map<Label2, std::size_t, Label2Hash> by_label_;
    std::size_t origin_ = 0, east_ = 0, north_ = 0;
    std::size_t steps_ = 0, max_steps_ = 0, labelled_count_ = 0;
};

struct IntAffine {
    std::int64_t z[4]; // row-major, any determinant
    Label2 shift;

    Label2 apply(Label2 k) const {
        return {z[0] * k.n + z[1] * k.m + shift.n, z[2] * k.n + z[3] * k.m + shift.m};
    }
    std::int64_t det() const { return z[0] * z[3] - z[1] * z[2]; }
};

// Exact integer solve of to = Z . from + s over >= 3 pairs; nullopt when no
// consistent integral relation exists (any determinant accepted).
std::optional<IntAffine> solve_integer_affine(
    const std::vector<std::pair<Label2, Label2>>& pairs) {
    if (pairs.size() < 3) return std::nullopt;
    Label2 f0 = pairs[0].first, t0 = pairs[0].second;

    // two independent difference vectors
    std::optional<std::size_t> i1, i2;
    for (std::size_t i = 1; i < pairs.size() && !i2; ++i) {
        Label2 d = pairs[i].first - f0;
        if (d == Label2{0, 0}) continue;
        if (!i1) {
            i1 = i;
            continue;
        }
        Label2 d1 = pairs[*i1].first - f0;
        if (d1.n * d.m - d.n * d1.m != 0) i2 = i;
    }
    if (!i1 || !i2) return std::nullopt;

    Label2 d1 = pairs[*i1].first - f0, d2 = pairs[*i2].first - f0;
    Label2 o1 = pairs[*i1].second - t0, o2 = pairs[*i2].second - t0;
    std::int64_t det = d1.n * d2.m - d2.n * d1.m;
    // Z = O adj(D) / det with D = (d1 | d2), O = (o1 | o2)
    std::int64_t za = o1.n * d2.m - o2.n * d1.m;
    std::int64_t zb = -o1.n * d2.n + o2.n * d1.n;
    std::int64_t zc = o1.m * d2.m - o2.m * d1.m;
    std::int64_t zd = -o1.m * d2.n + o2.m * d1.n;
    if (za % det || zb % det || zc % det || zd % det) return std::nullopt;

    IntAffine t{{za / det, zb / det, zc / det, zd / det}, {0, 0}};
    t.shift = t0 - Label2{t.z[0] * f0.n + t.z[1] * f0.m, t.z[2] * f0.n + t.z[3] * f0.m};
    for (const auto& [from, to] : pairs)
        if (!(t.apply(from) == to)) return std::nullopt;
    return t;
}

bool labels_colinear(const std::vector<std::pair<Label2, Label2>>& pairs) {
    if (pairs.size() < 3) return true;
    Label2 f0 = pairs[0].first;
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        Label2 d1 = pairs[i].first - f0;
        if (d1 == Label2{0, 0}) continue;
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            Label2 d2 = pairs[j].first - f0;
            if (d1.n * d2.m - d2.n * d1.m != 0) return false;
        }
    }
    return true;
}

} // namespace

AffineBasis seed_affine_basis(const SpectrumSnapshot& snapshot, const AlgoConfig& config) {
    Engine e(snapshot, config);
    return e.seed();
}

Point2 transport_point(const SpectrumSnapshot& snapshot, Point2 mu1, Point2 v,
                       const std::vector<Point2>& excluded) {
    return nearest_point(snapshot, mu1 + v, excluded);
}

LabelWindowResult label_window(const SpectrumSnapshot& snapshot, const AlgoConfig& config) {
    Engine e(snapshot, config);
    e.seed();
    e.fill_plane();
    return e.emit(LabellingKind::fixed_h);
}

LabelWindowResult label_from_basis(const SpectrumSnapshot& snapshot, const AlgoConfig& config,
                                   const AffineBasis& basis, LabellingKind kind) {
    Engine e(snapshot, config);
    e.adopt_basis(basis);
    e.fill_plane();
    return e.emit(kind);
}

UnimodularMatrix2 check_unimodular_basis(const Labelling& labelling,
                                         const OracleLabelling& oracle) {
    std::vector<std::pair<Label2, Label2>> pairs; // (label, oracle label)
    for (const auto& [p, k] : labelling.entries())
        if (oracle.has_point(p)) pairs.emplace_back(k, oracle.label_of(p));
    if (labels_colinear(pairs))
        fail("InsufficientOverlap", "need three non-colinear labelled points in the oracle");

    auto t = solve_integer_affine(pairs);
    if (!t) fail("NotAffine", "no consistent integral affine relation to the oracle");
    if (t->det() != 1)
        fail("NotUnimodular", "affine relation to the oracle has determinant " +
                                  std::to_string(t->det()));
    // z1 = Z e1 must have coprime entries; automatic for det +1, checked
    if (std::gcd(std::llabs(t->z[0]), std::llabs(t->z[2])) != 1)
        fail("NotUnimodular", "first basis column is not coprime");
    return {t->z[0], t->z[1], t->z[2], t->z[3]};
}

AffineInt2 transition_between(const Labelling& l1, const Labelling& l2) {
    std::vector<std::pair<Label2, Label2>> pairs;
    for (const auto& [p, k] : l1.entries())
        if (auto k2 = l2.label_of(p)) pairs.emplace_back(k, *k2);
    if (labels_colinear(pairs))
        fail("InsufficientOverlap", "labellings share fewer than three non-colinear points");
    auto t = solve_integer_affine(pairs);
    if (!t || t->det() != 1)
        fail("NotAffine", "labellings are not related by one orientation-preserving "
                          "integral affine map");
    return {UnimodularMatrix2{t->z[0], t->z[1], t->z[2], t->z[3]}, t->shift};
}

} // namespace asymlat
