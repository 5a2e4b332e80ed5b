#pragma once

#include <vector>

#include "asymlat/chart.hpp"
#include "asymlat/geometry.hpp"
#include "asymlat/labelling.hpp"

namespace asymlat {

// The three seed points of the fixed-hbar algorithm and their edge vectors.
struct AffineBasis {
    Point2 origin; // labelled (0,0)
    Point2 east;   // labelled (1,0)
    Point2 north;  // labelled (0,1)
    Point2 v1;     // east - origin
    Point2 v2;     // north - origin
};

struct AlgoConfig {
    Point2 center;       // the point c
    Window inner_window; // B0, strictly inside the snapshot window
    std::size_t max_steps = 0; // safety cap; 0 means 10 * point count

    AlgoConfig(Point2 c, Window b0) : center(c), inner_window(b0) {}
};

struct LabelWindowResult {
    Labelling labelling;
    std::vector<Point2> unlabelled; // snapshot points in B0 left without a label
    AffineBasis basis;              // seed basis after the orientation step
};

// Steps 1-5: origin nearest to c, the (n,0) row, then the north seed.
// Candidate east/north directions are selected from the near-minimal
// distance band (relative width 5%) by a fixed canonical direction rule, so
// that the choice is invariant under O(h^2) perturbations of the points;
// exact-tie cases reproduce the plain lexicographic pick.
AffineBasis seed_affine_basis(const SpectrumSnapshot& snapshot, const AlgoConfig& config);

// Nearest snapshot point to mu1 + v outside the caller's excluded set.
Point2 transport_point(const SpectrumSnapshot& snapshot, Point2 mu1, Point2 v,
                       const std::vector<Point2>& excluded);

// The full twelve-step labelling of snapshot ∩ B0 from scratch.
LabelWindowResult label_window(const SpectrumSnapshot& snapshot, const AlgoConfig& config);

// Steps 4/6-12 from a caller-supplied seed basis (used by the semitoric
// rebasing step). The basis points must belong to the snapshot.
LabelWindowResult label_from_basis(const SpectrumSnapshot& snapshot, const AlgoConfig& config,
                                   const AffineBasis& basis, LabellingKind kind);

// The unimodular matrix Z with oracle = Z . label + const on the overlap.
// Exact integer solve from three independent points, verified everywhere.
UnimodularMatrix2 check_unimodular_basis(const Labelling& labelling,
                                         const OracleLabelling& oracle);

// The unique affine transform with l2 = t(l1) on all common points.
AffineInt2 transition_between(const Labelling& l1, const Labelling& l2);

} // namespace asymlat
