#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "asymlat/geometry.hpp"
#include "asymlat/integer_affine.hpp"
#include "asymlat/projective.hpp"

namespace asymlat {

struct Mat2d {
    // row-major [[a,b],[c,d]]
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
    Point2 apply(Point2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2d inverse() const {
        double dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    friend Mat2d operator*(const Mat2d& L, const Mat2d& R) {
        return {L.a * R.a + L.b * R.c, L.a * R.b + L.b * R.d,
                L.c * R.a + L.d * R.c, L.c * R.b + L.d * R.d};
    }
};

using ChartMap = std::function<Point2(Point2)>;
using JacobianMap = std::function<Mat2d(Point2)>;

// Evaluable asymptotic chart G_h = G0 + h G1 + h^2 G2 on a domain U.
// G0 must be an orientation-preserving injection on the domain; both
// properties are checked on a sampling grid at construction.
class ChartModel {
public:
    ChartModel(Window domain, ChartMap g0,
               ChartMap g1 = nullptr, ChartMap g2 = nullptr,
               JacobianMap analytic_jacobian_g0 = nullptr);

    const Window& domain() const { return domain_; }
    bool has_g1() const { return static_cast<bool>(g1_); }
    bool has_g2() const { return static_cast<bool>(g2_); }
    bool has_analytic_jacobian() const { return static_cast<bool>(jac0_); }

    Point2 g0(Point2 xi) const { return g0_(xi); }
    Point2 g1(Point2 xi) const { return g1_ ? g1_(xi) : Point2{0.0, 0.0}; }
    Point2 g2(Point2 xi) const { return g2_ ? g2_(xi) : Point2{0.0, 0.0}; }

    // Jacobian of G0: analytic when supplied, else central differences.
    Mat2d jacobian_g0(Point2 xi, double fd_step = 1e-6) const;

private:
    Window domain_;
    ChartMap g0_, g1_, g2_;
    JacobianMap jac0_;
};

// Displace generated points by a uniform random vector of norm
// <= amplitude * h^2, deterministically from `seed`.
struct PerturbationSpec {
    double amplitude = 0.0;
    std::uint64_t seed = 0;

    PerturbationSpec() = default;
    PerturbationSpec(double amp, std::uint64_t s) : amplitude(amp), seed(s) {
        if (!(amp >= 0.0)) fail("InvalidPerturbation", "amplitude must be >= 0");
    }
};

// Ground-truth map point -> k with lambda = G_h(h k); the hidden oracle
// behind every labelling test.
class OracleLabelling {
public:
    OracleLabelling(std::shared_ptr<const ChartModel> chart,
                    std::vector<std::pair<Point2, Label2>> entries);

    Label2 label_of(Point2 p) const; // fails with UnknownPoint
    std::optional<Point2> point_of(Label2 k) const;
    bool has_point(Point2 p) const { return by_point_.count(p) > 0; }
    const std::vector<std::pair<Point2, Label2>>& entries() const { return entries_; }
    const ChartModel& chart() const { return *chart_; }

private:
    std::shared_ptr<const ChartModel> chart_;
    std::vector<std::pair<Point2, Label2>> entries_;
    std::unordered_map<Point2, Label2, Point2Hash> by_point_;
    std::unordered_map<Label2, Point2, Label2Hash> by_label_;
};

// Named chart presets forming the test corpus.
//   identity            G0 = Id
//   linear(a,b)         G0 = (x, a x + b y), b > 0
//   shear_nonlinear     G0 = (x, x^2/2 + y)
//   semitoric(alpha,mu) G0 = (x + alpha, y + 0.4 x + 0.15 x^2), G1 = (mu, 0)
//   pendulum_classical  no chart; classical spherical-pendulum values only
struct SystemPreset {
    enum class Kind { identity, linear, shear_nonlinear, semitoric, pendulum_classical };

    Kind kind = Kind::identity;
    double a = 0.0, b = 0.0;        // linear
    double alpha = 0.0, mu = 0.0;   // semitoric

    static SystemPreset identity() { return {Kind::identity, 0, 0, 0, 0}; }
    static SystemPreset linear(double a, double b);
    static SystemPreset shear_nonlinear() { return {Kind::shear_nonlinear, 0, 0, 0, 0}; }
    static SystemPreset semitoric(double alpha, double mu);
    static SystemPreset pendulum_classical() { return {Kind::pendulum_classical, 0, 0, 0, 0}; }

    static SystemPreset parse(const std::string& text); // "linear:2,3" etc.
    // plain-text key = value form:
    //   preset = linear
    //   a = 2
    //   b = 3
    static SystemPreset from_key_values(const std::string& text);
    std::string name() const;
};

// Chart for a preset, with domain sized so the lattice covers `window`.
// Fails for pendulum_classical, which has no asymptotic chart here.
std::shared_ptr<const ChartModel> preset_chart(const SystemPreset& preset, const Window& window);

// Chart xi -> G(A xi) on A^{-1} U; same point set, relabelled oracle.
std::shared_ptr<const ChartModel> precompose(std::shared_ptr<const ChartModel> chart,
                                             const UnimodularMatrix2& A);

// G0(xi) + h G1(xi) + h^2 G2(xi); OutOfDomain when xi is outside U.
Point2 evaluate_chart(const ChartModel& chart, PlanckValue h, Point2 xi);

// Image of h Z^2 under the chart, clipped to `window`, plus the oracle.
// Deterministic for a fixed PerturbationSpec; EmptySnapshot if nothing lands.
std::pair<SpectrumSnapshot, OracleLabelling>
generate_snapshot(std::shared_ptr<const ChartModel> chart, PlanckValue h,
                  const Window& window, const PerturbationSpec& perturb = {});

// One snapshot per hbar (strictly decreasing), per-snapshot seed streams.
std::pair<SpectrumFamily, std::vector<OracleLabelling>>
generate_family(std::shared_ptr<const ChartModel> chart, const std::vector<PlanckValue>& h_list,
                const Window& window, const PerturbationSpec& perturb = {});

// Classical rotation number [d1 g : d2 g] at xi0 = G0^{-1}(c), where g is the
// second component of G0. Newton inversion to 1e-12, max 50 iterations.
Projective1 classical_rotation(const ChartModel& chart, Point2 c);

// Drift G0'(xi0) xi0 at xi0 = G0^{-1}(c).
Point2 classical_drift(const ChartModel& chart, Point2 c);

// Newton inversion of G0 (exposed for reuse); fails with InversionFailed.
Point2 invert_g0(const ChartModel& chart, Point2 c);

} // namespace asymlat
