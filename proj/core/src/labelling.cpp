#include "asymlat/labelling.hpp"

namespace asymlat {

const char* to_string(LabellingKind k) {
    switch (k) {
        case LabellingKind::fixed_h: return "fixed_h";
        case LabellingKind::semitoric: return "semitoric";
        case LabellingKind::sequence_corrected: return "sequence_corrected";
    }
    return "?";
}

void Labelling::assign(Point2 p, Label2 k) {
    if (!window_.contains(p))
        fail("PointOutsideWindow", "labelled point outside the labelling window");
    if (by_point_.count(p))
        fail("DuplicateAssignment", "point already labelled");
    if (by_label_.count(k))
        fail("DuplicateAssignment", "label already used");
    by_point_.emplace(p, k);
    by_label_.emplace(k, p);
    entries_.emplace_back(p, k);
}

std::optional<Label2> Labelling::label_of(Point2 p) const {
    auto it = by_point_.find(p);
    if (it == by_point_.end()) return std::nullopt;
    return it->second;
}

std::optional<Point2> Labelling::point_of(Label2 k) const {
    auto it = by_label_.find(k);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

} // namespace asymlat
