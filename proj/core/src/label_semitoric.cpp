#include "asymlat/label_semitoric.hpp"
#include <string>
#include <optional>
#include <map>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace asymlat {

namespace {

double frac01(double x) {
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

// Bezout complement of a coprime pair: (np, mp) with np * m - mp * n = 1,
// minimizing |np|, then |mp|, ties toward nonnegative entries.
std::pair<std::int64_t, std::int64_t> bezout_complement(std::int64_t n, std::int64_t m) {
    // particular solution by extended Euclid on (m, -n)
    std::int64_t a = m, b = -n;
    std::int64_t x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    std::int64_t r0 = a, r1 = b;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    if (r0 < 0) { r0 = -r0; x0 = -x0; y0 = -y0; }
    // r0 = gcd = 1; particular (np, mp) = (x0, y0) with np m - mp n = 1;
    // the general solution is (np + t n, mp + t m)
    auto key = [](std::int64_t np, std::int64_t mp) {
        return std::make_tuple(std::llabs(np), std::llabs(mp), np < 0, mp < 0);
    };
    std::int64_t best_np = x0, best_mp = y0;
    if (n != 0 || m != 0) {
        double t0 = n != 0 ? -static_cast<double>(x0) / static_cast<double>(n)
                           : -static_cast<double>(y0) / static_cast<double>(m);
        for (std::int64_t t = static_cast<std::int64_t>(std::floor(t0)) - 2;
             t <= static_cast<std::int64_t>(std::ceil(t0)) + 2; ++t) {
            std::int64_t np = x0 + t * n, mp = y0 + t * m;
            if (key(np, mp) < key(best_np, best_mp)) { best_np = np; best_mp = mp; }
        }
    }
    return {best_np, best_mp};
}

} // namespace

std::pair<StripModel, StripAssignment> detect_strips(const SpectrumSnapshot& snapshot,
                                                     double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5))
        fail("InvalidConfig", "strip half-width must be in (0, 1/2)");
    if (snapshot.size() == 0) fail("EmptySnapshot", "no points to assign to strips");

    double h = snapshot.hbar().value();
    // circular mean of the fractional phases x/h
    double sx = 0.0, sy = 0.0;
    for (const auto& p : snapshot.points()) {
        double ang = 2.0 * M_PI * (p.x / h);
        sx += std::cos(ang);
        sy += std::sin(ang);
    }
    double mu = frac01(std::atan2(sy, sx) / (2.0 * M_PI));

    StripModel model{snapshot.hbar(), 0.0, mu, epsilon};
    StripAssignment assign;
    double worst = 0.0;
    for (const auto& p : snapshot.points()) {
        auto j = static_cast<std::int64_t>(std::llround(p.x / h - mu));
        double r = p.x - h * (static_cast<double>(j) + mu);
        assign.strip_of.emplace(p, j);
        assign.residual.emplace(p, r);
        worst = std::max(worst, std::abs(r));
    }
    if (worst > epsilon * h)
        fail("NotStriped",
             "max strip residual " + std::to_string(worst) + " exceeds eps*h");
    return {model, std::move(assign)};
}

AffineBasis semitoric_rebase(const SpectrumSnapshot& snapshot, const AffineBasis& basis,
                             const Labelling& labelling) {
    double h = snapshot.hbar().value();
    double half_width = 0.5 * std::pow(h, 1.5);
    Point2 o = basis.origin;

    // mu: nearest point strictly above the origin inside the vertical strip
    std::optional<Point2> mu;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : snapshot.points()) {
        if (!(p.y > o.y)) continue;
        if (std::abs(p.x - o.x) > half_width) continue;
        double d2 = (p - o).norm2();
        if (d2 < best || (d2 == best && mu && lex_less(p, *mu))) {
            best = d2;
            mu = p;
        }
    }
    if (!mu) fail("NoStripNeighbor", "no lattice point above the origin in the strip");

    // coordinates of mu - origin on the seed basis, rounded to integers
    Point2 d = *mu - o;
    double det = basis.v1.x * basis.v2.y - basis.v2.x * basis.v1.y;
    double cn = (d.x * basis.v2.y - basis.v2.x * d.y) / det;
    double cm = (basis.v1.x * d.y - d.x * basis.v1.y) / det;
    auto n = static_cast<std::int64_t>(std::llround(cn));
    auto m = static_cast<std::int64_t>(std::llround(cm));
    if (std::gcd(std::llabs(n), std::llabs(m)) != 1)
        fail("NotCoprime", "strip neighbor coordinates (" + std::to_string(n) + "," +
                               std::to_string(m) + ") are not coprime");

    auto [np, mp] = bezout_complement(n, m);
    auto origin_label = labelling.label_of(o);
    if (!origin_label) fail("UnknownPoint", "basis origin is not labelled");
    auto east = labelling.point_of(*origin_label + Label2{np, mp});
    if (!east)
        fail("NoStripNeighbor", "Bezout complement point (" + std::to_string(np) + "," +
                                    std::to_string(mp) + ") is not labelled");

    return {o, *east, *mu, *east - o, *mu - o};
}

LabelWindowResult label_semitoric(const SpectrumSnapshot& snapshot, const AlgoConfig& config,
                                  double epsilon) {
    detect_strips(snapshot, epsilon); // NotStriped propagates
    LabelWindowResult fixed = label_window(snapshot, config);
    AffineBasis rebased = semitoric_rebase(snapshot, fixed.basis, fixed.labelling);
    return label_from_basis(snapshot, config, rebased, LabellingKind::semitoric);
}

Labelling label_from_elliptic_boundary(const SpectrumSnapshot& snapshot, double epsilon,
                                       EllipticBoundary side) {
    auto [model, assign] = detect_strips(snapshot, epsilon);

    std::map<std::int64_t, std::vector<Point2>> strips;
    for (const auto& p : snapshot.points())
        strips[assign.strip_of.at(p)].push_back(p);

    Labelling out(snapshot.hbar(), snapshot.window(), LabellingKind::semitoric);
    for (auto& [j, pts] : strips) {
        std::sort(pts.begin(), pts.end(),
                  [&](Point2 a, Point2 b) { return a.y < b.y; });
        if (side == EllipticBoundary::maximum) std::reverse(pts.begin(), pts.end());
        for (std::size_t i = 1; i < pts.size(); ++i) {
            double ya = pts[i - 1].y, yb = pts[i].y;
            if (std::abs(yb - ya) <= 1e-12 * std::max({std::abs(ya), std::abs(yb), 1.0}))
                fail("DuplicateHeight", "two equal heights in strip " + std::to_string(j));
        }
        for (std::size_t i = 0; i < pts.size(); ++i)
            out.assign(pts[i], {j, static_cast<std::int64_t>(i)});
    }
    return out;
}

} // namespace asymlat
