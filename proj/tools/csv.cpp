#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>

namespace asymlat::cliio {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_int(std::int64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    double v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        fail("ParseError", "bad numeric field '" + text + "'");
    return v;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(line);
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::int64_t parse_int(const std::string& text) {
    std::int64_t v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        fail("ParseError", "bad integer field '" + text + "'");
    return v;
}

} // namespace

std::string write_spectrum(const std::vector<SpectrumRow>& rows, bool labelled) {
    std::vector<SpectrumRow> sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const SpectrumRow& a, const SpectrumRow& b) {
        if (a.hbar != b.hbar) return a.hbar > b.hbar; // decreasing hbar
        return lex_less(a.point, b.point);
    });
    std::string out = labelled ? "hbar,x,y,n,m\n" : "hbar,x,y\n";
    for (const auto& r : sorted) {
        out += format_double(r.hbar);
        out += ',';
        out += format_double(r.point.x);
        out += ',';
        out += format_double(r.point.y);
        if (labelled) {
            out += ',';
            if (r.label) out += format_int(r.label->n);
            out += ',';
            if (r.label) out += format_int(r.label->m);
        }
        out += '\n';
    }
    return out;
}

SpectrumFile read_spectrum(std::istream& in) {
    SpectrumFile file;
    std::string line;
    if (!std::getline(in, line)) fail("ParseError", "empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "hbar,x,y")
        file.labelled = false;
    else if (line == "hbar,x,y,n,m")
        file.labelled = true;
    else
        fail("ParseError", "unrecognized header '" + line + "'");

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line, ',');
        std::size_t expect = file.labelled ? 5 : 3;
        if (fields.size() != expect)
            fail("ParseError", "line " + std::to_string(lineno) + ": expected " +
                                   std::to_string(expect) + " fields");
        SpectrumRow row;
        row.hbar = parse_double(fields[0]);
        row.point = {parse_double(fields[1]), parse_double(fields[2])};
        if (!(row.hbar > 0.0))
            fail("ParseError", "line " + std::to_string(lineno) + ": hbar must be > 0");
        if (file.labelled && !fields[3].empty() && !fields[4].empty())
            row.label = Label2{parse_int(fields[3]), parse_int(fields[4])};
        file.rows.push_back(row);
    }
    if (file.rows.empty()) fail("ParseError", "no data rows");
    return file;
}

ParsedFamily group_by_hbar(const SpectrumFile& file) {
    ParsedFamily fam;
    for (const auto& r : file.rows) {
        auto it = std::find(fam.hbars.begin(), fam.hbars.end(), r.hbar);
        if (it == fam.hbars.end()) {
            fam.hbars.push_back(r.hbar);
            fam.groups.emplace_back();
            it = fam.hbars.end() - 1;
        }
        fam.groups[static_cast<std::size_t>(it - fam.hbars.begin())].push_back(r);
    }
    // sort groups by decreasing hbar
    std::vector<std::size_t> order(fam.hbars.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fam.hbars[a] > fam.hbars[b]; });
    ParsedFamily sorted;
    for (std::size_t i : order) {
        sorted.hbars.push_back(fam.hbars[i]);
        sorted.groups.push_back(std::move(fam.groups[i]));
    }
    return sorted;
}

Window bounding_window(const std::vector<SpectrumRow>& rows) {
    double x0 = rows[0].point.x, x1 = x0, y0 = rows[0].point.y, y1 = y0;
    for (const auto& r : rows) {
        x0 = std::min(x0, r.point.x);
        x1 = std::max(x1, r.point.x);
        y0 = std::min(y0, r.point.y);
        y1 = std::max(y1, r.point.y);
    }
    double mx = 0.05 * std::max(x1 - x0, 1e-6) + 1e-9;
    double my = 0.05 * std::max(y1 - y0, 1e-6) + 1e-9;
    return {x0 - mx, x1 + mx, y0 - my, y1 + my};
}

} // namespace asymlat::cliio
