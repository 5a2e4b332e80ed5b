// asymlat: generate, label, and analyze joint-spectrum point files.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "asymlat/chart.hpp"
#include "asymlat/label_fixed.hpp"
#include "asymlat/label_semitoric.hpp"
#include "asymlat/label_sequence.hpp"
#include "asymlat/rotation.hpp"
#include "csv.hpp"

using namespace asymlat;
using namespace asymlat::cliio;

namespace {

// exit 2: input/config problems; exit 3: algorithm failures
bool is_config_error(const std::string& name) {
    static const char* names[] = {"InvalidWindow",     "InvalidSchedule", "InvalidPreset",
                                  "InvalidConfig",     "InvalidPlanckValue",
                                  "InvalidPerturbation", "ParseError"};
    for (const char* n : names)
        if (name == n) return true;
    return false;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
    return out;
}

Window parse_window(const std::string& text) {
    auto v = parse_list(text);
    if (v.size() != 4) fail("ParseError", "window needs four numbers x0,x1,y0,y1");
    return {v[0], v[1], v[2], v[3]};
}

Point2 parse_point(const std::string& text) {
    auto v = parse_list(text);
    if (v.size() != 2) fail("ParseError", "point needs two numbers x,y");
    return {v[0], v[1]};
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("IoError", "cannot open '" + path + "' for writing");
    out << content;
}

SpectrumFile read_input(const std::string& path) {
    if (path == "-") return read_spectrum(std::cin);
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("IoError", "cannot open '" + path + "'");
    return read_spectrum(in);
}

SpectrumSnapshot to_snapshot(const std::vector<SpectrumRow>& rows, double hbar,
                             const std::optional<Window>& window) {
    std::vector<Point2> pts;
    pts.reserve(rows.size());
    for (const auto& r : rows) pts.push_back(r.point);
    Window w = window ? *window : bounding_window(rows);
    return {PlanckValue(hbar), std::move(pts), w};
}

Window default_inner(const Window& w) {
    double mx = 0.025 * (w.xmax - w.xmin), my = 0.025 * (w.ymax - w.ymin);
    return {w.xmin + mx, w.xmax - mx, w.ymin + my, w.ymax - my};
}

// Ground-truth labels of file points recovered through a known chart: invert
// G0, refine by the subprincipal terms, round to the lattice, and verify.
OracleLabelling reconstruct_oracle(std::shared_ptr<const ChartModel> chart,
                                   const SpectrumSnapshot& snap) {
    double h = snap.hbar().value();
    double tol = 0.45 * (snap.size() >= 2 ? separation_radius(snap) : h);
    std::vector<std::pair<Point2, Label2>> entries;
    for (const auto& p : snap.points()) {
        Point2 xi0 = invert_g0(*chart, p);
        Point2 corr = p - h * chart->g1(xi0) - (h * h) * chart->g2(xi0);
        Point2 xi = invert_g0(*chart, corr);
        Label2 k{static_cast<std::int64_t>(std::llround(xi.x / h)),
                 static_cast<std::int64_t>(std::llround(xi.y / h))};
        Point2 xik{h * static_cast<double>(k.n), h * static_cast<double>(k.m)};
        Point2 q = evaluate_chart(*chart, snap.hbar(), xik);
        if (!((q - p).norm() <= tol))
            fail("OracleMismatch", "point does not sit on the chart lattice");
        entries.emplace_back(p, k);
    }
    return {chart, std::move(entries)};
}

std::vector<SpectrumRow> labelled_rows(const SpectrumSnapshot& snap,
                                       const Labelling& labelling) {
    std::vector<SpectrumRow> rows;
    for (const auto& p : snap.points()) {
        SpectrumRow r{snap.hbar().value(), p, std::nullopt};
        if (auto k = labelling.label_of(p)) r.label = *k;
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------- gen

SystemPreset load_preset(const std::string& inline_text, const std::string& file) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) fail("InvalidPreset", "cannot open preset file '" + file + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return SystemPreset::from_key_values(ss.str());
    }
    if (inline_text.empty()) fail("InvalidPreset", "need --preset or --preset-file");
    return SystemPreset::parse(inline_text);
}

int cmd_gen(const std::string& preset_text, const std::string& preset_file,
            const std::string& hbar_text,
            const std::string& window_text, double amplitude, std::uint64_t seed,
            const std::string& out, const std::string& oracle_out) {
    SystemPreset preset = load_preset(preset_text, preset_file);
    Window window = parse_window(window_text);
    std::vector<PlanckValue> hs;
    for (double h : parse_list(hbar_text)) hs.emplace_back(h);
    auto chart = preset_chart(preset, window);
    PerturbationSpec perturb(amplitude, seed);

    auto [family, oracles] = generate_family(chart, hs, window, perturb);
    std::vector<SpectrumRow> rows, orows;
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (const auto& p : family.at(i).points()) {
            rows.push_back({hs[i].value(), p, std::nullopt});
            orows.push_back({hs[i].value(), p, oracles[i].label_of(p)});
        }
    }
    write_output(out, write_spectrum(rows, false));
    if (!oracle_out.empty()) write_output(oracle_out, write_spectrum(orows, true));
    return 0;
}

// -------------------------------------------------------------------- label

int cmd_label(const std::string& in, const std::string& mode,
              const std::string& center_text, const std::string& inner_text,
              const std::string& window_text, double epsilon, const std::string& out,
              const std::string& sidecar) {
    SpectrumFile file = read_input(in);
    ParsedFamily fam = group_by_hbar(file);
    std::optional<Window> window;
    if (!window_text.empty()) window = parse_window(window_text);

    std::vector<SpectrumRow> rows;
    std::string sidecar_csv = "j,hbar,s_a,s_b,s_c,s_d\n";

    if (mode == "sequence") {
        std::vector<SpectrumSnapshot> snaps;
        std::optional<Window> shared = window;
        for (std::size_t i = 0; i < fam.groups.size(); ++i) {
            if (!shared) {
                std::vector<SpectrumRow> all;
                for (const auto& g : fam.groups)
                    all.insert(all.end(), g.begin(), g.end());
                shared = bounding_window(all);
            }
            snaps.push_back(to_snapshot(fam.groups[i], fam.hbars[i], shared));
        }
        SpectrumFamily family(std::move(snaps));
        Window inner = inner_text.empty() ? default_inner(family.at(0).window())
                                          : parse_window(inner_text);
        Point2 center = center_text.empty() ? inner.center() : parse_point(center_text);
        auto [labellings, state] = uniform_label_family(family, {center, inner});
        for (std::size_t i = 0; i < family.size(); ++i) {
            auto r = labelled_rows(family.at(i), labellings[i]);
            rows.insert(rows.end(), r.begin(), r.end());
            const auto& s = state.steps[i].S;
            sidecar_csv += format_int(static_cast<std::int64_t>(i + 1)) + "," +
                           format_double(fam.hbars[i]) + "," + format_int(s.a) + "," +
                           format_int(s.b) + "," + format_int(s.c) + "," +
                           format_int(s.d) + "\n";
        }
        if (!sidecar.empty()) write_output(sidecar, sidecar_csv);
    } else {
        for (std::size_t i = 0; i < fam.groups.size(); ++i) {
            SpectrumSnapshot snap = to_snapshot(fam.groups[i], fam.hbars[i], window);
            Window inner = inner_text.empty() ? default_inner(snap.window())
                                              : parse_window(inner_text);
            Point2 center = center_text.empty() ? inner.center() : parse_point(center_text);
            AlgoConfig cfg(center, inner);
            std::optional<Labelling> labelling;
            if (mode == "fixed")
                labelling = label_window(snap, cfg).labelling;
            else if (mode == "semitoric")
                labelling = label_semitoric(snap, cfg, epsilon).labelling;
            else if (mode == "elliptic")
                labelling = label_from_elliptic_boundary(snap, epsilon);
            else
                fail("ParseError", "unknown mode '" + mode + "'");
            auto r = labelled_rows(snap, *labelling);
            rows.insert(rows.end(), r.begin(), r.end());
        }
    }
    write_output(out, write_spectrum(rows, true));
    return 0;
}

// ------------------------------------------------------------------- rotnum

int cmd_rotnum(const std::string& in, const std::string& chart_text,
               const std::string& out) {
    SpectrumFile file = read_input(in);
    if (!file.labelled) fail("ParseError", "rotnum needs a labelled file (hbar,x,y,n,m)");
    ParsedFamily fam = group_by_hbar(file);

    std::string csv = chart_text.empty()
                          ? "hbar,n,m,p,q,value_real\n"
                          : "hbar,n,m,p,q,value_real,classical_p,classical_q,error\n";
    for (std::size_t i = 0; i < fam.groups.size(); ++i) {
        SpectrumSnapshot snap = to_snapshot(fam.groups[i], fam.hbars[i], std::nullopt);
        Labelling lab(snap.hbar(), snap.window(), LabellingKind::fixed_h);
        for (const auto& r : fam.groups[i])
            if (r.label) lab.assign(r.point, *r.label);

        std::optional<Projective1> expected;
        if (!chart_text.empty()) {
            auto chart = preset_chart(SystemPreset::parse(chart_text),
                                      bounding_window(fam.groups[i]));
            OracleLabelling oracle = reconstruct_oracle(chart, snap);
            Labelling olab(snap.hbar(), snap.window(), LabellingKind::fixed_h);
            for (const auto& [p, k] : oracle.entries())
                if (lab.label_of(p)) olab.assign(p, k);
            AffineInt2 t = transition_between(olab, lab);
            Point2 c = snap.window().center();
            expected = mobius_apply(t.linear.inverse(),
                                    classical_rotation(*chart, c)).canonical();
        }
        for (const auto& [k, s] : rotation_field(lab)) {
            csv += format_double(s.hbar.value()) + "," + format_int(k.n) + "," +
                   format_int(k.m) + "," + format_double(s.value.p) + "," +
                   format_double(s.value.q) + "," + format_double(s.value_real);
            if (expected)
                csv += "," + format_double(expected->p) + "," + format_double(expected->q) +
                       "," + format_double(projective_distance(s.value, *expected));
            csv += "\n";
        }
    }
    write_output(out, csv);
    return 0;
}

// -------------------------------------------------------------------- drift

int cmd_drift(const std::string& in, const std::string& center_text, int order,
              double eps_factor, const std::string& out) {
    SpectrumFile file = read_input(in);
    ParsedFamily fam = group_by_hbar(file);
    std::vector<SpectrumRow> all;
    for (const auto& g : fam.groups) all.insert(all.end(), g.begin(), g.end());
    Window window = bounding_window(all);
    std::vector<SpectrumSnapshot> snaps;
    for (std::size_t i = 0; i < fam.groups.size(); ++i)
        snaps.push_back(to_snapshot(fam.groups[i], fam.hbars[i], window));
    SpectrumFamily family(std::move(snaps));

    DriftEstimate est = estimate_drift(family, {parse_point(center_text), order, eps_factor});
    std::string csv = "h1,h2,dx,dy\n";
    csv += format_double(est.h1.value()) + "," + format_double(est.h2.value()) + "," +
           format_double(est.value.x) + "," + format_double(est.value.y) + "\n";
    write_output(out, csv);
    return 0;
}

// ---------------------------------------------------------------- monodromy

int cmd_monodromy(const std::string& in, const std::string& windows_text,
                  const std::string& out) {
    SpectrumFile file = read_input(in);
    ParsedFamily fam = group_by_hbar(file);
    if (fam.groups.size() != 1)
        fail("InvalidConfig", "monodromy expects a single-hbar file");
    SpectrumSnapshot snap = to_snapshot(fam.groups[0], fam.hbars[0], std::nullopt);

    std::vector<Window> chain;
    std::stringstream ss(windows_text);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) chain.push_back(parse_window(item));

    UnimodularMatrix2 P = monodromy_along_path(snap, chain);
    std::string csv = "a,b,c,d\n";
    csv += format_int(P.a) + "," + format_int(P.b) + "," + format_int(P.c) + "," +
           format_int(P.d) + "\n";
    write_output(out, csv);
    return 0;
}

// ------------------------------------------------------------------ compare

int cmd_compare(const std::string& in, const std::string& chart_text,
                const std::string& center_text, const std::string& inner_text,
                const std::string& out) {
    SpectrumFile file = read_input(in);
    ParsedFamily fam = group_by_hbar(file);
    std::vector<SpectrumRow> all;
    for (const auto& g : fam.groups) all.insert(all.end(), g.begin(), g.end());
    Window window = bounding_window(all);
    auto chart = preset_chart(SystemPreset::parse(chart_text), window);

    std::vector<SpectrumSnapshot> snaps;
    std::vector<OracleLabelling> oracles;
    std::vector<Labelling> labellings;
    Window inner = inner_text.empty() ? default_inner(window) : parse_window(inner_text);
    Point2 center = center_text.empty() ? inner.center() : parse_point(center_text);
    for (std::size_t i = 0; i < fam.groups.size(); ++i) {
        snaps.push_back(to_snapshot(fam.groups[i], fam.hbars[i], window));
        oracles.push_back(reconstruct_oracle(chart, snaps.back()));
        labellings.push_back(label_window(snaps.back(), {center, inner}).labelling);
    }
    SpectrumFamily family(std::move(snaps));
    ConvergenceReport rep = compare_convergence(*chart, family, labellings, oracles, center);

    std::string csv = "hbar,quantum_p,quantum_q,classical_p,classical_q,error\n";
    for (const auto& e : rep.entries)
        csv += format_double(e.hbar.value()) + "," + format_double(e.quantum.p) + "," +
               format_double(e.quantum.q) + "," + format_double(e.classical.p) + "," +
               format_double(e.classical.q) + "," + format_double(e.error) + "\n";
    write_output(out, csv);
    if (rep.exact)
        std::cout << "fitted_order=exact\n";
    else
        std::cout << "fitted_order=" << format_double(rep.fitted_order) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"asymptotic-lattice labelling and rotation-number toolkit"};
    app.require_subcommand(1);

    std::string preset, preset_file, hbars, window_text, out, oracle_out, input;
    std::string mode = "fixed";
    std::string center_text, inner_text, windows_text, chart_text, sidecar;
    double amplitude = 0.0, epsilon = 0.25, eps_factor = 0.1;
    std::uint64_t seed = 0;
    int order = 3;

    auto* gen = app.add_subcommand("gen", "generate a synthetic joint spectrum");
    gen->add_option("--preset", preset, "chart preset, e.g. linear:2,3");
    gen->add_option("--preset-file", preset_file, "key = value preset config");
    gen->add_option("--hbar", hbars, "comma list of hbar values, decreasing")->required();
    gen->add_option("--window", window_text, "x0,x1,y0,y1")->required();
    gen->add_option("--perturb", amplitude, "perturbation amplitude");
    gen->add_option("--seed", seed, "perturbation seed");
    gen->add_option("--out", out, "output CSV (default stdout)");
    gen->add_option("--oracle-out", oracle_out, "also write the oracle labels");

    auto* label = app.add_subcommand("label", "label a spectrum file");
    label->add_option("input", input, "spectrum CSV (hbar,x,y)")->required();
    label->add_option("--mode", mode, "fixed|semitoric|sequence|elliptic");
    label->add_option("--center", center_text, "algorithm center c");
    label->add_option("--inner", inner_text, "inner window B0");
    label->add_option("--window", window_text, "snapshot window override");
    label->add_option("--epsilon", epsilon, "strip half-width in (0,1/2)");
    label->add_option("--out", out, "output CSV (default stdout)");
    label->add_option("--sidecar", sidecar, "S_j matrices (sequence mode)");

    auto* rotnum = app.add_subcommand("rotnum", "quantum rotation numbers");
    rotnum->add_option("input", input, "labelled CSV (hbar,x,y,n,m)")->required();
    rotnum->add_option("--chart", chart_text, "preset for classical comparison");
    rotnum->add_option("--out", out, "output CSV (default stdout)");

    auto* drift = app.add_subcommand("drift", "divided-difference drift estimate");
    drift->add_option("input", input, "multi-hbar spectrum CSV")->required();
    drift->add_option("--center", center_text, "point c")->required();
    drift->add_option("--order", order, "admissibility exponent N");
    drift->add_option("--eps-factor", eps_factor, "admissibility bound factor");
    drift->add_option("--out", out, "output CSV (default stdout)");

    auto* monodromy = app.add_subcommand("monodromy", "transition product over windows");
    monodromy->add_option("input", input, "single-hbar spectrum CSV")->required();
    monodromy->add_option("--windows", windows_text, "chain 'x0,x1,y0,y1;...'")->required();
    monodromy->add_option("--out", out, "output CSV (default stdout)");

    auto* compare = app.add_subcommand("compare", "quantum vs classical convergence");
    compare->add_option("input", input, "multi-hbar spectrum CSV")->required();
    compare->add_option("--chart", chart_text, "chart preset")->required();
    compare->add_option("--center", center_text, "comparison point c");
    compare->add_option("--inner", inner_text, "inner window B0");
    compare->add_option("--out", out, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
        if (gen->parsed())
            return cmd_gen(preset, preset_file, hbars, window_text, amplitude, seed, out,
                           oracle_out);
        if (label->parsed())
            return cmd_label(input, mode, center_text, inner_text, window_text, epsilon,
                             out, sidecar);
        if (rotnum->parsed()) return cmd_rotnum(input, chart_text, out);
        if (drift->parsed()) return cmd_drift(input, center_text, order, eps_factor, out);
        if (monodromy->parsed()) return cmd_monodromy(input, windows_text, out);
        if (compare->parsed())
            return cmd_compare(input, chart_text, center_text, inner_text, out);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return is_config_error(e.name()) ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
