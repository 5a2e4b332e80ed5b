#pragma once

#include <unordered_map>

#include "asymlat/label_fixed.hpp"

namespace asymlat {

// x ~ alpha + h (j + mu) with the gauge alpha = 0, mu in [0,1).
struct StripModel {
    PlanckValue hbar;
    double alpha = 0.0;
    double mu = 0.0;
    double epsilon = 0.25; // half-width parameter, in (0, 1/2)
};

struct StripAssignment {
    std::unordered_map<Point2, std::int64_t, Point2Hash> strip_of;
    std::unordered_map<Point2, double, Point2Hash> residual; // x - h (j + mu)
};

// Estimates the common fractional phase of {x/h} by circular mean and
// assigns each point the nearest strip index j = round(x/h - mu).
// NotStriped if any residual exceeds eps * h.
std::pair<StripModel, StripAssignment> detect_strips(const SpectrumSnapshot& snapshot,
                                                     double epsilon = 0.25);

// Replaces the basis of a fixed-hbar labelling by the semitoric one: mu is
// the nearest lattice point strictly above the origin in the vertical strip
// of width h^{3/2}; its basis coordinates are rounded to coprime integers
// (n,m), and the Bezout complement (n',m') with n' m - m' n = 1 (minimal
// |n'|, then |m'|, ties toward nonnegative) gives the new east point.
AffineBasis semitoric_rebase(const SpectrumSnapshot& snapshot, const AffineBasis& basis,
                             const Labelling& labelling);

// Fixed-hbar labelling restarted from the rebased basis; the first label
// component is constant on strips and increments across them.
LabelWindowResult label_semitoric(const SpectrumSnapshot& snapshot, const AlgoConfig& config,
                                  double epsilon = 0.25);

enum class EllipticBoundary { minimum, maximum };

// Labels (j, k): j the strip index, k the 0-based rank of y within the
// strip, counted from the bounded side (increasing y for a minimum).
Labelling label_from_elliptic_boundary(const SpectrumSnapshot& snapshot,
                                       double epsilon = 0.25,
                                       EllipticBoundary side = EllipticBoundary::minimum);

} // namespace asymlat
