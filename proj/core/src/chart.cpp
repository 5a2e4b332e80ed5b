#include "asymlat/chart.hpp"
#include "asymlat/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace asymlat {

namespace {

constexpr double kNewtonTol = 1e-12;
constexpr int kNewtonMaxIter = 50;
constexpr double kFdStep = 1e-6;

// SplitMix64; the fixed generator behind PerturbationSpec (see README,
// "Reproducibility"). Outputs are mapped to doubles in [0,1) via the top
// 53 bits, so streams are identical across platforms.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    SplitMix64 g{a ^ (0x9e3779b97f4a7c15ull + (b << 1))};
    g.next();
    return g.state ^ g.next();
}

// uniform in the closed disk of the given radius
Point2 disk_sample(SplitMix64& g, double radius) {
    double r = radius * std::sqrt(g.uniform01());
    double th = 2.0 * M_PI * g.uniform01();
    return {r * std::cos(th), r * std::sin(th)};
}

} // namespace

ChartModel::ChartModel(Window domain, ChartMap g0, ChartMap g1, ChartMap g2,
                       JacobianMap analytic_jacobian_g0)
    : domain_(domain), g0_(std::move(g0)), g1_(std::move(g1)), g2_(std::move(g2)),
      jac0_(std::move(analytic_jacobian_g0)) {
    if (!g0_) fail("InvalidChart", "G0 is required");

    // orientation and injectivity, checked on a sampling grid
    const int n = 17;
    std::vector<Point2> images;
    images.reserve(n * n);
    double dx = (domain_.xmax - domain_.xmin) / (n + 1);
    double dy = (domain_.ymax - domain_.ymin) / (n + 1);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            Point2 xi{domain_.xmin + i * dx, domain_.ymin + j * dy};
            if (jacobian_g0(xi).det() <= 0.0)
                fail("InvalidChart", "det(G0') must be positive on the domain");
            images.push_back(g0_(xi));
        }
    }
    double tol = 1e-9 * std::min(dx, dy);
    std::sort(images.begin(), images.end(), lex_less);
    for (std::size_t i = 1; i < images.size(); ++i)
        if ((images[i] - images[i - 1]).norm() < tol)
            fail("InvalidChart", "G0 is not injective on the sampling grid");
}

Mat2d ChartModel::jacobian_g0(Point2 xi, double fd_step) const {
    if (jac0_) return jac0_(xi);
    double h = fd_step;
    Point2 fx = (1.0 / (2 * h)) * (g0_({xi.x + h, xi.y}) - g0_({xi.x - h, xi.y}));
    Point2 fy = (1.0 / (2 * h)) * (g0_({xi.x, xi.y + h}) - g0_({xi.x, xi.y - h}));
    return {fx.x, fy.x, fx.y, fy.y};
}

OracleLabelling::OracleLabelling(std::shared_ptr<const ChartModel> chart,
                                 std::vector<std::pair<Point2, Label2>> entries)
    : chart_(std::move(chart)), entries_(std::move(entries)) {
    for (const auto& [p, k] : entries_) {
        if (!by_point_.emplace(p, k).second)
            fail("DuplicateAssignment", "oracle assigns two labels to one point");
        if (!by_label_.emplace(k, p).second)
            fail("DuplicateAssignment", "oracle assigns one label to two points");
    }
}

Label2 OracleLabelling::label_of(Point2 p) const {
    auto it = by_point_.find(p);
    if (it == by_point_.end()) fail("UnknownPoint", "point is not in the oracle");
    return it->second;
}

std::optional<Point2> OracleLabelling::point_of(Label2 k) const {
    auto it = by_label_.find(k);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

SystemPreset SystemPreset::linear(double a, double b) {
    if (!(b > 0.0)) fail("InvalidPreset", "linear preset needs b > 0");
    return {Kind::linear, a, b, 0, 0};
}

SystemPreset SystemPreset::semitoric(double alpha, double mu) {
    if (!(mu >= 0.0 && mu < 1.0)) fail("InvalidPreset", "semitoric preset needs mu in [0,1)");
    return {Kind::semitoric, 0, 0, alpha, mu};
}

SystemPreset SystemPreset::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ','))
            args.push_back(std::stod(item));
    }
    if (name == "identity") return identity();
    if (name == "linear") {
        if (args.size() != 2) fail("InvalidPreset", "linear needs two parameters a,b");
        return linear(args[0], args[1]);
    }
    if (name == "shear_nonlinear") return shear_nonlinear();
    if (name == "semitoric") {
        if (args.size() != 2) fail("InvalidPreset", "semitoric needs two parameters alpha,mu");
        return semitoric(args[0], args[1]);
    }
    if (name == "pendulum_classical") return pendulum_classical();
    fail("InvalidPreset", "unknown preset '" + name + "'");
}

SystemPreset SystemPreset::from_key_values(const std::string& text) {
    auto trim = [](std::string s) {
        auto a = s.find_first_not_of(" \t\r");
        auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string name;
    double a = 0, b = 0, alpha = 0, mu = 0;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail("InvalidPreset", "expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "preset") name = value;
        else if (key == "a") a = std::stod(value);
        else if (key == "b") b = std::stod(value);
        else if (key == "alpha") alpha = std::stod(value);
        else if (key == "mu") mu = std::stod(value);
        else fail("InvalidPreset", "unknown key '" + key + "'");
    }
    if (name == "identity") return identity();
    if (name == "linear") return linear(a, b);
    if (name == "shear_nonlinear") return shear_nonlinear();
    if (name == "semitoric") return semitoric(alpha, mu);
    if (name == "pendulum_classical") return pendulum_classical();
    fail("InvalidPreset", "unknown or missing preset name '" + name + "'");
}

std::string SystemPreset::name() const {
    switch (kind) {
        case Kind::identity: return "identity";
        case Kind::linear: return "linear";
        case Kind::shear_nonlinear: return "shear_nonlinear";
        case Kind::semitoric: return "semitoric";
        case Kind::pendulum_classical: return "pendulum_classical";
    }
    return "?";
}

namespace {

// Domain that maps over `window`: bounding box of G0^{-1}(corners) plus a
// 10% margin, computed with the preset's exact inverse.
Window preset_domain(const SystemPreset& p, const Window& w) {
    auto inv = [&](Point2 c) -> Point2 {
        switch (p.kind) {
            case SystemPreset::Kind::identity: return c;
            case SystemPreset::Kind::linear: return {c.x, (c.y - p.a * c.x) / p.b};
            case SystemPreset::Kind::shear_nonlinear: return {c.x, c.y - 0.5 * c.x * c.x};
            case SystemPreset::Kind::semitoric: {
                double x = c.x - p.alpha;
                return {x, c.y - 0.4 * x - 0.15 * x * x};
            }
            default: fail("InvalidPreset", "preset has no chart");
        }
    };
    Point2 c1 = inv({w.xmin, w.ymin}), c2 = inv({w.xmin, w.ymax});
    Point2 c3 = inv({w.xmax, w.ymin}), c4 = inv({w.xmax, w.ymax});
    double x0 = std::min({c1.x, c2.x, c3.x, c4.x});
    double x1 = std::max({c1.x, c2.x, c3.x, c4.x});
    double y0 = std::min({c1.y, c2.y, c3.y, c4.y});
    double y1 = std::max({c1.y, c2.y, c3.y, c4.y});
    double mx = 0.1 * (x1 - x0) + 1e-9, my = 0.1 * (y1 - y0) + 1e-9;
    return {x0 - mx, x1 + mx, y0 - my, y1 + my};
}

} // namespace

std::shared_ptr<const ChartModel> preset_chart(const SystemPreset& preset, const Window& window) {
    Window dom = preset_domain(preset, window);
    switch (preset.kind) {
        case SystemPreset::Kind::identity:
            return std::make_shared<ChartModel>(
                dom, [](Point2 xi) { return xi; }, nullptr, nullptr,
                [](Point2) { return Mat2d{1, 0, 0, 1}; });
        case SystemPreset::Kind::linear: {
            double a = preset.a, b = preset.b;
            return std::make_shared<ChartModel>(
                dom, [a, b](Point2 xi) { return Point2{xi.x, a * xi.x + b * xi.y}; },
                nullptr, nullptr, [a, b](Point2) { return Mat2d{1, 0, a, b}; });
        }
        case SystemPreset::Kind::shear_nonlinear:
            return std::make_shared<ChartModel>(
                dom, [](Point2 xi) { return Point2{xi.x, 0.5 * xi.x * xi.x + xi.y}; },
                nullptr, nullptr, [](Point2 xi) { return Mat2d{1, 0, xi.x, 1}; });
        case SystemPreset::Kind::semitoric: {
            double al = preset.alpha, mu = preset.mu;
            return std::make_shared<ChartModel>(
                dom,
                [al](Point2 xi) {
                    return Point2{xi.x + al, xi.y + 0.4 * xi.x + 0.15 * xi.x * xi.x};
                },
                [mu](Point2) { return Point2{mu, 0.0}; }, nullptr,
                [](Point2 xi) { return Mat2d{1, 0, 0.4 + 0.3 * xi.x, 1}; });
        }
        case SystemPreset::Kind::pendulum_classical:
            fail("InvalidPreset", "pendulum_classical has no asymptotic chart");
    }
    fail("InvalidPreset", "unreachable");
}

std::shared_ptr<const ChartModel> precompose(std::shared_ptr<const ChartModel> chart,
                                             const UnimodularMatrix2& A) {
    // new domain: A^{-1} U, bounded by the preimages of the corners
    const Window& u = chart->domain();
    UnimodularMatrix2 inv = A.inverse();
    auto map = [inv](Point2 v) -> Point2 {
        return {static_cast<double>(inv.a) * v.x + static_cast<double>(inv.b) * v.y,
                static_cast<double>(inv.c) * v.x + static_cast<double>(inv.d) * v.y};
    };
    Point2 c1 = map({u.xmin, u.ymin}), c2 = map({u.xmin, u.ymax});
    Point2 c3 = map({u.xmax, u.ymin}), c4 = map({u.xmax, u.ymax});
    Window dom{std::min({c1.x, c2.x, c3.x, c4.x}), std::max({c1.x, c2.x, c3.x, c4.x}),
               std::min({c1.y, c2.y, c3.y, c4.y}), std::max({c1.y, c2.y, c3.y, c4.y})};
    Mat2d Ad{static_cast<double>(A.a), static_cast<double>(A.b),
             static_cast<double>(A.c), static_cast<double>(A.d)};
    auto base = chart;
    const Window& bd = base->domain();
    // clip preimages to the base domain to keep evaluations in range
    auto apply_A = [Ad](Point2 xi) { return Ad.apply(xi); };
    auto inside = [bd](Point2 p) { return bd.contains(p); };
    ChartMap g0 = [base, apply_A](Point2 xi) { return base->g0(apply_A(xi)); };
    ChartMap g1 = base->has_g1()
                      ? ChartMap([base, apply_A](Point2 xi) { return base->g1(apply_A(xi)); })
                      : nullptr;
    ChartMap g2 = base->has_g2()
                      ? ChartMap([base, apply_A](Point2 xi) { return base->g2(apply_A(xi)); })
                      : nullptr;
    JacobianMap j0 = [base, apply_A, Ad, inside](Point2 xi) -> Mat2d {
        Point2 im = apply_A(xi);
        if (!inside(im)) return Mat2d{1, 0, 0, 1}; // grid corner outside base domain
        return base->jacobian_g0(im) * Ad;
    };
    return std::make_shared<ChartModel>(dom, g0, g1, g2, j0);
}

Point2 evaluate_chart(const ChartModel& chart, PlanckValue h, Point2 xi) {
    if (!chart.domain().contains(xi))
        fail("OutOfDomain", "chart evaluated outside its domain");
    double hv = h.value();
    Point2 v = chart.g0(xi);
    if (chart.has_g1()) v = v + hv * chart.g1(xi);
    if (chart.has_g2()) v = v + (hv * hv) * chart.g2(xi);
    return v;
}

std::pair<SpectrumSnapshot, OracleLabelling>
generate_snapshot(std::shared_ptr<const ChartModel> chart, PlanckValue h,
                  const Window& window, const PerturbationSpec& perturb) {
    return [&, chart]() -> std::pair<SpectrumSnapshot, OracleLabelling> {
        const Window& dom = chart->domain();
        double hv = h.value();
        auto lo_k1 = static_cast<std::int64_t>(std::floor(dom.xmin / hv)) - 1;
        auto hi_k1 = static_cast<std::int64_t>(std::ceil(dom.xmax / hv)) + 1;
        auto lo_k2 = static_cast<std::int64_t>(std::floor(dom.ymin / hv)) - 1;
        auto hi_k2 = static_cast<std::int64_t>(std::ceil(dom.ymax / hv)) + 1;

        std::vector<Point2> points;
        std::vector<std::pair<Point2, Label2>> oracle;
        for (std::int64_t k1 = lo_k1; k1 <= hi_k1; ++k1) {
            for (std::int64_t k2 = lo_k2; k2 <= hi_k2; ++k2) {
                Point2 xi{hv * static_cast<double>(k1), hv * static_cast<double>(k2)};
                if (!dom.contains(xi)) continue;
                Point2 p = evaluate_chart(*chart, h, xi);
                if (perturb.amplitude > 0.0) {
                    SplitMix64 g{mix_seed(perturb.seed,
                                          mix_seed(static_cast<std::uint64_t>(k1) * 2654435761ull,
                                                   static_cast<std::uint64_t>(k2)))};
                    p = p + disk_sample(g, perturb.amplitude * hv * hv);
                }
                if (!window.contains(p)) continue;
                points.push_back(p);
                oracle.emplace_back(p, Label2{k1, k2});
            }
        }
        if (points.empty())
            fail("EmptySnapshot", "no lattice point lands in the window");
        return {SpectrumSnapshot(h, std::move(points), window),
                OracleLabelling(chart, std::move(oracle))};
    }();
}

std::pair<SpectrumFamily, std::vector<OracleLabelling>>
generate_family(std::shared_ptr<const ChartModel> chart, const std::vector<PlanckValue>& h_list,
                const Window& window, const PerturbationSpec& perturb) {
    if (h_list.empty()) fail("InvalidSchedule", "empty hbar schedule");
    for (std::size_t i = 1; i < h_list.size(); ++i)
        if (!(h_list[i] < h_list[i - 1]))
            fail("InvalidSchedule", "hbar schedule must be strictly decreasing");

    // per-snapshot seed streams keep the result independent of scheduling
    std::vector<std::optional<std::pair<SpectrumSnapshot, OracleLabelling>>> slots(
        h_list.size());
    std::vector<std::exception_ptr> errors(h_list.size());
    parallel_for(h_list.size(), [&](std::size_t i) {
        try {
            PerturbationSpec per = perturb;
            per.seed = mix_seed(perturb.seed, i);
            slots[i] = generate_snapshot(chart, h_list[i], window, per);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e); // lowest index first

    std::vector<SpectrumSnapshot> snaps;
    std::vector<OracleLabelling> oracles;
    for (auto& s : slots) {
        snaps.push_back(std::move(s->first));
        oracles.push_back(std::move(s->second));
    }
    return {SpectrumFamily(std::move(snaps)), std::move(oracles)};
}

Point2 invert_g0(const ChartModel& chart, Point2 c) {
    auto try_newton = [&](Point2 start) -> std::optional<Point2> {
        Point2 xi = start;
        if (!chart.domain().contains(xi)) return std::nullopt;
        double res = (chart.g0(xi) - c).norm();
        for (int it = 0; it < kNewtonMaxIter; ++it) {
            if (res < kNewtonTol) return xi;
            Mat2d J = chart.jacobian_g0(xi);
            if (std::abs(J.det()) < 1e-14) return std::nullopt;
            Point2 step = J.inverse().apply(chart.g0(xi) - c);
            double t = 1.0;
            for (int bt = 0; bt < 30; ++bt) {
                Point2 cand = xi - t * step;
                if (chart.domain().contains(cand)) {
                    double r2 = (chart.g0(cand) - c).norm();
                    if (r2 < res) {
                        xi = cand;
                        res = r2;
                        break;
                    }
                }
                t *= 0.5;
                if (bt == 29) return std::nullopt; // no descent
            }
        }
        return res < kNewtonTol ? std::optional<Point2>(xi) : std::nullopt;
    };

    if (auto xi = try_newton(c)) return *xi;

    // grid pre-search fallback for charts that move points far from c
    const Window& d = chart.domain();
    Point2 best{0.5 * (d.xmin + d.xmax), 0.5 * (d.ymin + d.ymax)};
    double best_res = std::numeric_limits<double>::infinity();
    const int n = 25;
    for (int i = 1; i < n; ++i) {
        for (int j = 1; j < n; ++j) {
            Point2 xi{d.xmin + (d.xmax - d.xmin) * i / n, d.ymin + (d.ymax - d.ymin) * j / n};
            double r = (chart.g0(xi) - c).norm();
            if (r < best_res) {
                best_res = r;
                best = xi;
            }
        }
    }
    if (auto xi = try_newton(best)) return *xi;
    fail("InversionFailed", "Newton iteration did not converge for G0^{-1}(c)");
}

Projective1 classical_rotation(const ChartModel& chart, Point2 c) {
    Point2 xi0 = invert_g0(chart, c);
    Mat2d J = chart.jacobian_g0(xi0, kFdStep);
    double d1g = J.c, d2g = J.d; // gradient of the second component of G0
    if (std::abs(d1g) < 1e-12 && std::abs(d2g) < 1e-12)
        fail("DegenerateGradient", "both partials of g0 vanish at xi0");
    return Projective1(d1g, d2g).canonical();
}

Point2 classical_drift(const ChartModel& chart, Point2 c) {
    Point2 xi0 = invert_g0(chart, c);
    return chart.jacobian_g0(xi0, kFdStep).apply(xi0);
}

} // namespace asymlat
