#pragma once

#include <map>
#include <optional>
#include <vector>

#include "asymlat/label_fixed.hpp"

namespace asymlat {

// One step of the multi-hbar correction fold.
struct SequenceStep {
    PlanckValue hbar;
    Mat2d T;                    // columns v1/h, v2/h (after orientation)
    bool t_invertible = false;
    std::optional<Mat2d> A;     // T_j^{-1} T_{j-1}
    std::optional<UnimodularMatrix2> a_sharp; // accepted integer rounding
    bool correction_applied = false;          // det(round(A)) == 1
    UnimodularMatrix2 S = UnimodularMatrix2::identity(); // accumulated
};

struct SequenceState {
    std::vector<SequenceStep> steps;

    std::size_t corrections() const {
        std::size_t n = 0;
        for (const auto& s : steps)
            if (s.correction_applied && !(s.a_sharp == std::nullopt) &&
                !(*s.a_sharp == UnimodularMatrix2::identity()))
                ++n;
        return n;
    }
};

struct DriftEstimate {
    Point2 value;              // estimated drift
    PlanckValue h1, h2;        // admissible pair used (h2 < h1)
    Point2 divided_difference; // h1 (lambda_h1 - lambda(h1,h2)) / (h1 - h2)
};

struct TrackedPoint {
    std::vector<std::pair<PlanckValue, Point2>> trajectory;
    Label2 anchor_label;
};

struct DriftConfig {
    Point2 center;
    int order = 3;        // N in h1 - h2 >= h1^N
    double eps_factor = 0.1; // 1/h2 - 1/h1 < eps_factor / h1
};

// Entrywise round half away from zero.
void round_to_int_matrix(const Mat2d& M, std::int64_t out[4]);

// The sequence algorithm: per hbar_j the seed basis gives T_j, the fold
// accumulates S_j (skipping steps whose rounded A has det != 1), and each
// completed labelling is corrected by (n~, m~) = S_j (n, m).
std::pair<std::vector<Labelling>, SequenceState>
uniform_label_family(const SpectrumFamily& family, const AlgoConfig& config);

// The point of snapshot(h2) carrying the same label as lambda1 in the given
// labellings, verified to be the unique snapshot(h2) point within
// ball_factor * separation_radius(snapshot(h2)) of lambda1.
Point2 track_point(const SpectrumFamily& family, Point2 lambda1,
                   PlanckValue h1, PlanckValue h2,
                   const Labelling& labelling1, const Labelling& labelling2,
                   double ball_factor = 0.5);

// Follows the anchor label of `start` through consecutive snapshots with
// track_point; the trajectory ends where the label leaves the window.
TrackedPoint track_trajectory(const SpectrumFamily& family, Point2 start,
                              const std::vector<Labelling>& labellings,
                              double ball_factor = 0.5);

// Divided-difference drift estimate over the tightest admissible pair.
DriftEstimate estimate_drift(const SpectrumFamily& family, const DriftConfig& config);

// Labels each window, extracts the transition on each overlap, and returns
// A_0^{-1} A_1^{-1} ... A_{N-1}^{-1} in that order (identity for a closed
// chain admitting a globally consistent labelling).
UnimodularMatrix2 monodromy_along_path(const SpectrumSnapshot& snapshot,
                                       const std::vector<Window>& windows);

} // namespace asymlat
