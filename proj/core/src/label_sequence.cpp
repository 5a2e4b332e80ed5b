#include "asymlat/label_sequence.hpp"
#include "asymlat/parallel.hpp"
#include <string>

#include <algorithm>
#include <cmath>

namespace asymlat {

void round_to_int_matrix(const Mat2d& M, std::int64_t out[4]) {
    // std::round is round-half-away-from-zero, the stated convention
    out[0] = static_cast<std::int64_t>(std::round(M.a));
    out[1] = static_cast<std::int64_t>(std::round(M.b));
    out[2] = static_cast<std::int64_t>(std::round(M.c));
    out[3] = static_cast<std::int64_t>(std::round(M.d));
}

std::pair<std::vector<Labelling>, SequenceState>
uniform_label_family(const SpectrumFamily& family, const AlgoConfig& config) {
    if (family.size() < 2)
        fail("TooFewSnapshots", "the sequence algorithm needs at least two snapshots");

    // the per-hbar labellings are independent; only the S-fold is ordered
    std::vector<std::optional<LabelWindowResult>> results(family.size());
    std::vector<std::exception_ptr> errors(family.size());
    parallel_for(family.size(), [&](std::size_t j) {
        try {
            results[j] = label_window(family.at(j), config);
        } catch (...) {
            errors[j] = std::current_exception();
        }
    });
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<Labelling> out;
    SequenceState state;
    UnimodularMatrix2 S = UnimodularMatrix2::identity();
    std::optional<Mat2d> prev_T; // last invertible T

    for (std::size_t j = 0; j < family.size(); ++j) {
        const SpectrumSnapshot& snap = family.at(j);
        double h = snap.hbar().value();
        LabelWindowResult& res = *results[j];

        SequenceStep step{snap.hbar(), Mat2d{}, false, std::nullopt, std::nullopt, false, S};
        step.T = Mat2d{res.basis.v1.x / h, res.basis.v2.x / h,
                       res.basis.v1.y / h, res.basis.v2.y / h};
        step.t_invertible = std::abs(step.T.det()) > 1e-12;

        if (step.t_invertible && prev_T) {
            Mat2d A = step.T.inverse() * (*prev_T);
            step.A = A;
            std::int64_t r[4];
            round_to_int_matrix(A, r);
            if (r[0] * r[3] - r[1] * r[2] == 1) {
                UnimodularMatrix2 a_sharp{r[0], r[1], r[2], r[3]};
                step.a_sharp = a_sharp;
                S = S * a_sharp.inverse();
                step.correction_applied = true;
            }
        }
        if (step.t_invertible) prev_T = step.T;
        step.S = S;
        state.steps.push_back(step);

        // corrected labels (n~, m~) = S_j (n, m)
        Labelling corrected(snap.hbar(), res.labelling.window(),
                            LabellingKind::sequence_corrected);
        for (const auto& [p, k] : res.labelling.entries())
            corrected.assign(p, S.apply(k));
        out.push_back(std::move(corrected));
    }
    return {std::move(out), std::move(state)};
}

Point2 track_point(const SpectrumFamily& family, Point2 lambda1,
                   PlanckValue h1, PlanckValue h2,
                   const Labelling& labelling1, const Labelling& labelling2,
                   double ball_factor) {
    const SpectrumSnapshot& snap2 = family.at_hbar(h2);
    (void)family.at_hbar(h1);

    auto label = labelling1.label_of(lambda1);
    if (!label) fail("LabelMissing", "lambda1 carries no label at h1");
    auto p2 = labelling2.point_of(*label);
    if (!p2) fail("LabelMissing", "the anchor label is absent at h2");

    // uniqueness ball: the labelled match must be the unique snapshot(h2)
    // point within ball_factor * separation_radius(h2) of lambda1
    double radius = ball_factor * separation_radius(snap2);
    if (!((*p2 - lambda1).norm() < radius))
        fail("AmbiguousMatch", "labelled match lies outside the uniqueness ball");
    Point2 nearest = nearest_point(snap2, lambda1, {});
    if (!(nearest == *p2))
        fail("AmbiguousMatch", "nearest point at h2 differs from the labelled match");
    return *p2;
}

TrackedPoint track_trajectory(const SpectrumFamily& family, Point2 start,
                              const std::vector<Labelling>& labellings,
                              double ball_factor) {
    if (labellings.size() != family.size())
        fail("InvalidConfig", "need one labelling per snapshot");
    auto anchor = labellings.front().label_of(start);
    if (!anchor) fail("LabelMissing", "the starting point carries no label");

    TrackedPoint tracked{{{family.at(0).hbar(), start}}, *anchor};
    Point2 current = start;
    for (std::size_t j = 1; j < family.size(); ++j) {
        if (!labellings[j].point_of(tracked.anchor_label)) break; // left the window
        current = track_point(family, current, family.at(j - 1).hbar(),
                              family.at(j).hbar(), labellings[j - 1], labellings[j],
                              ball_factor);
        tracked.trajectory.emplace_back(family.at(j).hbar(), current);
    }
    return tracked;
}

DriftEstimate estimate_drift(const SpectrumFamily& family, const DriftConfig& config) {
    // tightest admissible pair: smallest h1, then largest h2 < h1 with
    // h1 - h2 >= h1^N and 1/h2 - 1/h1 < eps_factor / h1
    std::optional<std::pair<std::size_t, std::size_t>> pick;
    for (std::size_t i = 0; i < family.size(); ++i) {
        double h1 = family.at(i).hbar().value();
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            double h2 = family.at(j).hbar().value();
            if (!(h1 - h2 >= std::pow(h1, config.order))) continue;
            if (!(1.0 / h2 - 1.0 / h1 < config.eps_factor / h1)) continue;
            if (!pick || h1 < family.at(pick->first).hbar().value() ||
                (pick->first == i && h2 > family.at(pick->second).hbar().value()))
                pick = {i, j};
        }
    }
    if (!pick) fail("NoAdmissiblePair", "no (h1,h2) pair satisfies the admissibility bounds");

    const SpectrumSnapshot& s1 = family.at(pick->first);
    const SpectrumSnapshot& s2 = family.at(pick->second);
    double h1 = s1.hbar().value(), h2 = s2.hbar().value();

    Point2 l1 = nearest_point(s1, config.center, {});
    Point2 l12 = nearest_point(s2, l1, {});
    if (!((l12 - l1).norm() < 0.5 * separation_radius(s2)))
        fail("AmbiguousMatch", "closest h2 point is not unique within the validated ball");

    Point2 dd = (h1 / (h1 - h2)) * (l1 - l12);
    return {dd, s1.hbar(), s2.hbar(), dd};
}

UnimodularMatrix2 monodromy_along_path(const SpectrumSnapshot& snapshot,
                                       const std::vector<Window>& windows) {
    if (windows.size() < 2)
        fail("InvalidConfig", "a chain needs at least two windows");

    std::vector<Labelling> local;
    local.reserve(windows.size());
    for (const auto& w : windows) {
        AlgoConfig cfg(w.center(), w);
        local.push_back(label_window(snapshot, cfg).labelling);
    }

    UnimodularMatrix2 product = UnimodularMatrix2::identity();
    for (std::size_t i = 0; i + 1 < local.size(); ++i) {
        AffineInt2 t = transition_between(local[i], local[i + 1]);
        product = product * t.linear.inverse(); // A_0^{-1} A_1^{-1} ...
    }
    return product;
}

} // namespace asymlat
