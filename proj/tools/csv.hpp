#pragma once

// Spectrum/labelling CSV files: UTF-8, LF newlines, mandatory header, fields
// in fixed order, shortest round-trip decimal formatting. Rows are grouped
// by hbar in decreasing order and sorted by (x, y) within each group.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "asymlat/geometry.hpp"
#include "asymlat/labelling.hpp"

namespace asymlat::cliio {

// shortest decimal string that parses back to exactly the same double
std::string format_double(double v);
std::string format_int(std::int64_t v);
double parse_double(const std::string& text); // ParseError on junk

struct SpectrumRow {
    double hbar;
    Point2 point;
    std::optional<Label2> label; // present in labelled files
};

struct SpectrumFile {
    bool labelled = false;
    std::vector<SpectrumRow> rows;
};

// groups rows of one file into snapshots (hbar strictly decreasing)
struct ParsedFamily {
    std::vector<double> hbars;
    std::vector<std::vector<SpectrumRow>> groups;
};

std::string write_spectrum(const std::vector<SpectrumRow>& rows, bool labelled);
SpectrumFile read_spectrum(std::istream& in);
ParsedFamily group_by_hbar(const SpectrumFile& file);

// window that strictly contains every point of the group (5% margin)
Window bounding_window(const std::vector<SpectrumRow>& rows);

} // namespace asymlat::cliio
