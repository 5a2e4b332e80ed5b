// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are fixed here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asymlat/label_semitoric.hpp"
#include "asymlat/label_sequence.hpp"
#include "asymlat/pendulum.hpp"
#include "asymlat/rotation.hpp"
#include "support.hpp"

using namespace asymlat;
using testsupport::Rng;
using testsupport::pendulum_w_oracle;
using testsupport::random_sl2z;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("%s criterion %2d: %-38s (%5.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                name.c_str(), dt, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

AlgoConfig centered(const Window& w, Point2 c, double shrink = 0.02) {
    double mx = shrink * (w.xmax - w.xmin), my = shrink * (w.ymax - w.ymin);
    return AlgoConfig(c, Window{w.xmin + mx, w.xmax - mx, w.ymin + my, w.ymax - my});
}

Labelling oracle_as_labelling(const SpectrumSnapshot& snap, const OracleLabelling& oracle,
                              LabellingKind kind = LabellingKind::fixed_h) {
    Labelling lab(snap.hbar(), snap.window(), kind);
    for (const auto& [p, k] : oracle.entries()) lab.assign(p, k);
    return lab;
}

UnimodularMatrix2 oracle_linear_part(const SpectrumSnapshot& snap,
                                     const OracleLabelling& oracle, const Labelling& lab) {
    Labelling olab(snap.hbar(), snap.window(), LabellingKind::fixed_h);
    for (const auto& [p, k] : oracle.entries())
        if (lab.label_of(p)) olab.assign(p, k);
    return transition_between(olab, lab).linear;
}

struct PresetCase {
    std::string name;
    std::shared_ptr<const ChartModel> chart;
    Window window;
    Point2 center;
};

std::vector<PresetCase> standard_presets() {
    return {{"identity", preset_chart(SystemPreset::identity(), {0, 1, 0, 1}),
             {0, 1, 0, 1}, {0.52, 0.505}},
            {"linear", preset_chart(SystemPreset::linear(2, 3), {0, 1, 1, 3.5}),
             {0, 1, 1, 3.5}, {0.51, 2.26}},
            {"shear_nonlinear",
             preset_chart(SystemPreset::shear_nonlinear(), {0.5, 1.5, 0.8, 2.2}),
             {0.5, 1.5, 0.8, 2.2}, {1.01, 1.52}},
            {"semitoric",
             preset_chart(SystemPreset::semitoric(0.0, 0.25), {0.2, 1.2, 0.2, 1.2}),
             {0.2, 1.2, 0.2, 1.2}, {0.71, 0.72}}};
}

// the basis-flipping chart used in criterion 7 (see unit_label_sequence)
std::shared_ptr<const ChartModel> flip_chart() {
    const double b = 4.0, yc = 0.497;
    return std::make_shared<ChartModel>(
        Window{-0.4, 1.4, 0.2, 0.8},
        [=](Point2 xi) {
            double u = xi.y - yc;
            return Point2{xi.x + 0.5 * u + 0.5 * b * u * u, xi.y};
        },
        nullptr, nullptr,
        [=](Point2 xi) { return Mat2d{1, 0.5 + b * (xi.y - yc), 0, 1}; });
}

bool criterion1(std::string& detail) {
    auto chart = preset_chart(SystemPreset::linear(2, 3), {0, 1, 0, 5});
    for (double h : {0.1, 0.05, 0.02}) {
        auto [snap, oracle] = generate_snapshot(chart, PlanckValue(h), {0, 1, 0, 5});
        Labelling lab = oracle_as_labelling(snap, oracle);
        auto field = rotation_field(lab);
        if (field.size() < 9) {
            detail = "too few interior labels";
            return false;
        }
        for (const auto& [k, s] : field)
            if (!(std::abs(s.value_real - 2.0 / 3.0) <= 1e-12)) {
                detail = "value " + std::to_string(s.value_real) + " at h=" +
                         std::to_string(h);
                return false;
            }
    }
    return true;
}

bool criterion2(std::string& detail) {
    auto g0 = [](Point2 xi) {
        return Point2{xi.x, 0.5 * xi.x * xi.x + 0.5 * xi.y * xi.y + xi.y};
    };
    auto jac = [](Point2 xi) { return Mat2d{1, 0, xi.x, xi.y + 1.0}; };
    // d2 g0 = xi2 + 1 >= 1.1 on the domain; the center is a lattice point at
    // every tested hbar so the base offset does not pollute the order fit
    auto chart = std::make_shared<ChartModel>(Window{0.1, 0.9, 0.1, 0.9}, g0, nullptr,
                                              nullptr, jac);
    Point2 c = g0({0.56, 0.4});
    Window window{c.x - 0.14, c.x + 0.14, c.y - 0.14, c.y + 0.14};
    std::vector<PlanckValue> hs{PlanckValue(0.02), PlanckValue(0.01), PlanckValue(0.005),
                                PlanckValue(0.0025)};
    auto [family, oracles] = generate_family(chart, hs, window);
    std::vector<Labelling> labellings;
    AlgoConfig cfg = centered(window, c);
    for (std::size_t i = 0; i < family.size(); ++i)
        labellings.push_back(label_window(family.at(i), cfg).labelling);
    ConvergenceReport rep = compare_convergence(*chart, family, labellings, oracles, c);
    if (rep.exact) {
        detail = "errors unexpectedly at the float floor";
        return false;
    }
    detail = "fitted order " + std::to_string(rep.fitted_order);
    return rep.fitted_order >= 0.8 && rep.fitted_order <= 1.3;
}

bool criterion3(std::string& detail) {
    Rng rng(20240811);
    for (const auto& pc : standard_presets()) {
        for (int trial = 0; trial < 20; ++trial) {
            UnimodularMatrix2 A = random_sl2z(rng, 3);
            auto chart = precompose(pc.chart, A);
            auto [snap, oracle] = generate_snapshot(chart, PlanckValue(0.05), pc.window);
            LabelWindowResult res = label_window(snap, centered(pc.window, pc.center));
            if (res.labelling.size() < 9) {
                detail = pc.name + ": too few labels";
                return false;
            }
            // exact integer verification on every labelled point, det +1
            UnimodularMatrix2 Z = check_unimodular_basis(res.labelling, oracle);
            if (Z.det() != 1) {
                detail = pc.name + ": determinant";
                return false;
            }
        }
    }
    return true;
}

bool criterion4(std::string& detail) {
    double worst_c = 0.0;
    for (const auto& pc : standard_presets()) {
        for (double h : {0.05, 0.04, 0.025}) {
            auto [clean, oc] = generate_snapshot(pc.chart, PlanckValue(h), pc.window);
            auto [pert, op] =
                generate_snapshot(pc.chart, PlanckValue(h), pc.window, {0.1, 777});
            AlgoConfig cfg = centered(pc.window, pc.center);
            LabelWindowResult rc = label_window(clean, cfg);
            LabelWindowResult rp = label_window(pert, cfg);

            std::size_t compared = 0;
            for (const auto& [p, k] : rc.labelling.entries()) {
                auto pp = op.point_of(oc.label_of(p));
                if (!pp) continue;
                auto kp = rp.labelling.label_of(*pp);
                if (!kp) continue;
                if (!(*kp == k)) {
                    detail = pc.name + ": label mismatch at h=" + std::to_string(h);
                    return false;
                }
                ++compared;
            }
            if (compared < rc.labelling.size() * 4 / 5) {
                detail = pc.name + ": too few comparable points";
                return false;
            }

            auto fc = rotation_field(rc.labelling);
            auto fp = rotation_field(rp.labelling);
            for (const auto& [k, s] : fc) {
                auto it = fp.find(k);
                if (it == fp.end()) continue;
                double diff;
                if (std::isfinite(s.value_real) && std::isfinite(it->second.value_real))
                    diff = std::abs(it->second.value_real - s.value_real);
                else
                    diff = projective_distance(it->second.value, s.value);
                worst_c = std::max(worst_c, diff / h);
            }
        }
    }
    detail = "max |dw|/h = " + std::to_string(worst_c);
    return worst_c <= 10.0;
}

bool criterion5(std::string& detail) {
    for (double mu : {0.0, 0.25, 0.7}) {
        auto chart = preset_chart(SystemPreset::semitoric(0.0, mu), {0.2, 1.2, 0.2, 1.2});
        double h = 0.05;
        auto [snap, oracle] = generate_snapshot(chart, PlanckValue(h), {0.2, 1.2, 0.2, 1.2});
        auto [model, assign] = detect_strips(snap, 0.25);
        for (const auto& [p, r] : assign.residual)
            if (!(std::abs(r) <= 0.25 * h)) {
                detail = "residual above 0.25 h";
                return false;
            }
        LabelWindowResult res =
            label_semitoric(snap, centered({0.2, 1.2, 0.2, 1.2}, {0.71, 0.72}), 0.25);
        std::optional<std::int64_t> offset;
        for (const auto& [p, k] : res.labelling.entries()) {
            std::int64_t j = assign.strip_of.at(p);
            if (!offset) offset = k.n - j;
            if (k.n - j != *offset) {
                detail = "first component is not strip index plus a constant (mu=" +
                         std::to_string(mu) + ")";
                return false;
            }
        }
        if (res.labelling.size() < 100) {
            detail = "too few labels";
            return false;
        }
    }
    return true;
}

bool criterion6(std::string& detail) {
    double h = 0.04;
    auto chart = std::make_shared<ChartModel>(
        Window{0.15, 1.25, -h / 2, 1.0},
        [](Point2 xi) { return Point2{xi.x, xi.y + 0.4 * xi.x + 0.15 * xi.x * xi.x}; },
        nullptr, nullptr, [](Point2 xi) { return Mat2d{1, 0, 0.4 + 0.3 * xi.x, 1}; });
    Window window{0.25, 1.15, 0.05, 0.9};
    auto [snap, oracle] = generate_snapshot(chart, PlanckValue(h), window);
    for (const auto& [p, k] : oracle.entries()) {
        if (k.m < 0) {
            detail = "construction leaked k2 < 0";
            return false;
        }
        if (k.m > 0 && !oracle.point_of({k.n, 0})) {
            detail = "a strip lost its bottom point";
            return false;
        }
    }
    Labelling lab = label_from_elliptic_boundary(snap, 0.25);
    std::optional<std::int64_t> shift;
    for (const auto& [p, k] : lab.entries()) {
        Label2 ko = oracle.label_of(p);
        if (k.m != ko.m) {
            detail = "height rank differs from oracle k2";
            return false;
        }
        if (!shift) shift = k.n - ko.n;
        if (k.n - ko.n != *shift) {
            detail = "strip index differs from oracle by a non-constant shift";
            return false;
        }
    }
    return lab.size() == snap.size();
}

bool criterion7(std::string& detail) {
    struct Case {
        std::string name;
        std::shared_ptr<const ChartModel> chart;
        Window window;
        Point2 center;
    };
    std::vector<Case> cases;
    for (const auto& pc : standard_presets())
        cases.push_back({pc.name, pc.chart, pc.window, pc.center});
    cases.push_back({"flip", flip_chart(), {0.05, 1.0, 0.32, 0.68}, {0.52, 0.513}});

    for (const auto& cse : cases) {
        std::vector<PlanckValue> hs;
        for (int j = 1; j <= 20; ++j) hs.emplace_back(0.2 / j);
        auto [family, oracles] = generate_family(cse.chart, hs, cse.window);
        auto [labellings, state] =
            uniform_label_family(family, centered(cse.window, cse.center));
        std::optional<UnimodularMatrix2> M;
        for (std::size_t j = 0; j < labellings.size(); ++j) {
            UnimodularMatrix2 Mj =
                oracle_linear_part(family.at(j), oracles[j], labellings[j]);
            if (!M) M = Mj;
            if (!(Mj == *M)) {
                detail = cse.name + ": linear part changed at step " + std::to_string(j + 1);
                return false;
            }
        }
        if (cse.name == "flip" && state.corrections() < 3) {
            detail = "flip preset produced only " + std::to_string(state.corrections()) +
                     " corrections";
            return false;
        }
    }
    return true;
}

bool criterion8(std::string& detail) {
    struct Case {
        std::shared_ptr<const ChartModel> chart;
        Window window;
        Point2 c;
    };
    std::vector<Case> cases{
        {preset_chart(SystemPreset::identity(), {0.05, 1, 0.05, 1}),
         {0.05, 1, 0.05, 1}, {0.4, 0.6}},
        {preset_chart(SystemPreset::shear_nonlinear(), {0.5, 1.5, 0.8, 2.2}),
         {0.5, 1.5, 0.8, 2.2}, {1.0, 1.5}}};
    for (const auto& cse : cases) {
        Point2 truth = classical_drift(*cse.chart, cse.c);
        double prev = 0.0;
        for (int k = 0; k < 2; ++k) {
            double h1 = 0.02 / (1 << k);
            double h2 = h1 - 2.0 * h1 * h1 * h1;
            auto [family, oracles] =
                generate_family(cse.chart, {PlanckValue(h1), PlanckValue(h2)}, cse.window);
            DriftEstimate est = estimate_drift(family, {cse.c, 3, 0.1});
            double err = (est.value - truth).norm();
            if (!(err <= 5.0 * h1)) {
                detail = "error " + std::to_string(err) + " above 5 h1";
                return false;
            }
            if (k > 0 && !(err <= 0.75 * 2.0 * prev + 1e-12)) {
                detail = "halving ratio above 0.75 * 2";
                return false;
            }
            prev = err;
        }
    }
    return true;
}

bool criterion9(std::string& detail) {
    // two-region atlas: identity below, shear -0.6 above, smooth ramp
    const double t0 = 0.6, t1 = 1.0, slope = -0.6;
    auto sigma = [=](double t) {
        if (t <= t0) return 0.0;
        if (t >= t1) return slope * ((t1 - t0) * 0.5 + (t - t1));
        double r = (t - t0) / (t1 - t0);
        return slope * (t1 - t0) * (r * r * r - 0.5 * r * r * r * r);
    };
    auto dsigma = [=](double t) {
        if (t <= t0) return 0.0;
        if (t >= t1) return slope;
        double r = (t - t0) / (t1 - t0);
        return slope * r * r * (3.0 - 2.0 * r);
    };
    auto chart = std::make_shared<ChartModel>(
        Window{-0.5, 1.4, -0.1, 1.7},
        [=](Point2 xi) { return Point2{xi.x + sigma(xi.y), xi.y}; }, nullptr, nullptr,
        [=](Point2 xi) { return Mat2d{1, dsigma(xi.y), 0, 1}; });
    auto [snap, oracle] =
        generate_snapshot(chart, PlanckValue(0.02), {0.02, 0.78, 0.02, 1.58});
    std::vector<Window> chain{{0.1, 0.7, 0.06, 0.55},
                              {0.1, 0.7, 0.45, 1.15},
                              {0.05, 0.6, 1.05, 1.5}};
    UnimodularMatrix2 P = monodromy_along_path(snap, chain);
    if (!(P == UnimodularMatrix2{1, 1, 0, 1})) {
        detail = "atlas transition not recovered";
        return false;
    }

    auto id = preset_chart(SystemPreset::identity(), {0, 1.1, 0, 1.1});
    auto [snap2, oracle2] = generate_snapshot(id, PlanckValue(0.02), {0, 1.1, 0, 1.1});
    std::vector<Window> loop{{0.1, 0.5, 0.1, 0.5},
                             {0.35, 0.75, 0.1, 0.5},
                             {0.35, 0.75, 0.35, 0.75},
                             {0.1, 0.5, 0.35, 0.75},
                             {0.1, 0.5, 0.1, 0.5}};
    if (!(monodromy_along_path(snap2, loop) == UnimodularMatrix2::identity())) {
        detail = "closed chain is not the identity";
        return false;
    }
    return true;
}

bool criterion10(std::string& detail) {
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        UnimodularMatrix2 A = random_sl2z(rng, 5);
        UnimodularMatrix2 B = random_sl2z(rng, 5);
        Projective1 w{static_cast<double>(rng.integer(-9, 9)),
                      static_cast<double>(rng.integer(1, 9))};
        Projective1 lhs = mobius_apply(A, mobius_apply(B, w));
        Projective1 rhs = mobius_apply(B * A, w);
        if (!projective_same_exact(lhs, rhs)) {
            detail = "composition law violated";
            return false;
        }
        if (lhs.p != std::floor(lhs.p) || lhs.q != std::floor(lhs.q)) {
            detail = "integrality lost";
            return false;
        }
    }
    return true;
}

bool criterion11(std::string& detail) {
    const double cases[][2] = {{0.3, 0.2}, {0.5, 0.0},  {0.8, 0.5}, {1.0, 0.6},
                               {0.2, -0.5}, {0.6, 0.9},  {1.5, 1.5}, {0.4, 0.7},
                               {0.9, 1.1},  {0.05, 0.0}};
    for (const auto& c : cases) {
        double w = pendulum_rotation({c[0], c[1]});
        double ref = pendulum_w_oracle(c[0], c[1]);
        if (!(std::abs(w - ref) <= 1e-6 * std::abs(ref))) {
            detail = "mismatch at J=" + std::to_string(c[0]);
            return false;
        }
    }
    for (double zc : {-0.3, -0.5, -0.7}) {
        Point2 b = pendulum_boundary_point(zc);
        double w = pendulum_rotation({b.x, b.y + 1e-4});
        if (!(std::abs(w - pendulum_boundary_ratio(zc)) < 1e-3)) {
            detail = "boundary limit missed at zc=" + std::to_string(zc);
            return false;
        }
    }
    return true;
}

} // namespace

int main() {
    std::printf("asymlat acceptance suite\n");
    criterion(1, "exact recovery on the linear chart", 1.0, criterion1);
    criterion(2, "first-order convergence on a curved chart", 5.0, criterion2);
    criterion(3, "GA+ equivalence across presets and frames", 10.0, criterion3);
    criterion(4, "O(h^2) perturbation robustness", 10.0, criterion4);
    criterion(5, "semitoric strip labelling", 2.0, criterion5);
    criterion(6, "elliptic half-lattice labelling", 1.0, criterion6);
    criterion(7, "sequence stationarity with basis flips", 20.0, criterion7);
    criterion(8, "first-order drift recovery", 2.0, criterion8);
    criterion(9, "monodromy transition composition", 5.0, criterion9);
    criterion(10, "exact Mobius action algebra", 1.0, criterion10);
    criterion(11, "pendulum rotation number quadrature", 10.0, criterion11);
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
