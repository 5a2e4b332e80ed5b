#include "asymlat/rotation.hpp"
#include <limits>
#include <string>

#include <algorithm>
#include <cmath>

#include "asymlat/label_fixed.hpp"

namespace asymlat {

QuantumRotationSample quantum_rotation(const Labelling& labelling, Label2 label) {
    auto base = labelling.point_of(label);
    if (!base) fail("LabelMissing", "base label is not assigned");
    auto east = labelling.point_of(label + Label2{1, 0});
    if (!east)
        fail("NeighborMissing", "(" + std::to_string(label.n + 1) + "," +
                                    std::to_string(label.m) + ") is absent");
    auto north = labelling.point_of(label + Label2{0, 1});
    if (!north)
        fail("NeighborMissing", "(" + std::to_string(label.n) + "," +
                                    std::to_string(label.m + 1) + ") is absent");

    // energy first-differences: second coordinates only
    double num = east->y - base->y;
    double den = north->y - base->y;
    if (num == 0.0 && den == 0.0)
        fail("DegenerateDifference", "both energy differences vanish");
    double ratio = den == 0.0
                       ? std::copysign(std::numeric_limits<double>::infinity(), num)
                       : num / den;
    return {label, Projective1(num, den).canonical(), ratio, labelling.hbar()};
}

std::map<Label2, QuantumRotationSample> rotation_field(const Labelling& labelling) {
    std::map<Label2, QuantumRotationSample> out;
    for (const auto& [p, k] : labelling.entries()) {
        if (!labelling.has_label(k + Label2{1, 0})) continue;
        if (!labelling.has_label(k + Label2{0, 1})) continue;
        out.emplace(k, quantum_rotation(labelling, k));
    }
    return out;
}

double semitoric_rotation_mod1(const Labelling& labelling, Label2 label) {
    if (labelling.kind() != LabellingKind::semitoric)
        fail("WrongLabellingKind", "semitoric rotation needs a semitoric labelling");
    QuantumRotationSample s = quantum_rotation(labelling, label);
    if (!std::isfinite(s.value_real))
        fail("VerticalDirection", "semitoric rotation value cannot be vertical");
    double r = s.value_real - std::floor(s.value_real);
    return r >= 1.0 ? 0.0 : r;
}

ConvergenceReport compare_convergence(const ChartModel& chart, const SpectrumFamily& family,
                                      const std::vector<Labelling>& labellings,
                                      const std::vector<OracleLabelling>& oracles,
                                      Point2 c) {
    if (labellings.size() != family.size() || oracles.size() != family.size())
        fail("InvalidConfig", "need one labelling and one oracle per snapshot");

    Projective1 classical = classical_rotation(chart, c);

    ConvergenceReport report;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const SpectrumSnapshot& snap = family.at(i);
        const Labelling& lab = labellings[i];

        // oracle as a labelling over the same points, for the transition
        Labelling oracle_lab(snap.hbar(), snap.window(), LabellingKind::fixed_h);
        for (const auto& [p, k] : oracles[i].entries())
            if (lab.label_of(p)) oracle_lab.assign(p, k);

        AffineInt2 t = transition_between(oracle_lab, lab); // lab = t(oracle)
        // relabelling by linear part A turns [w_I] into tA^{-1}-transported
        // value; mobius_apply(M, .) acts by the transpose of M
        Projective1 expected = mobius_apply(t.linear.inverse(), classical).canonical();

        Point2 base = nearest_point(snap, c, {});
        auto label = lab.label_of(base);
        if (!label) fail("LabelMissing", "nearest point to c is unlabelled");
        QuantumRotationSample q = quantum_rotation(lab, *label);

        double err = projective_distance(q.value, expected);
        report.entries.push_back({snap.hbar(), q.value, expected, err});
    }

    // least-squares slope of log(error) vs log(hbar) above the float floor
    std::vector<std::pair<double, double>> xy;
    for (const auto& e : report.entries)
        if (e.error > 1e-13)
            xy.emplace_back(std::log(e.hbar.value()), std::log(e.error));
    if (xy.size() < 2) {
        report.exact = true;
        return report;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : xy) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(xy.size());
    report.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return report;
}

} // namespace asymlat
