#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "asymlat/geometry.hpp"
#include "asymlat/integer_affine.hpp"

namespace asymlat {

enum class LabellingKind { fixed_h, semitoric, sequence_corrected };

const char* to_string(LabellingKind k);

// Partial injective assignment point -> Z^2 over one snapshot.
class Labelling {
public:
    Labelling(PlanckValue hbar, Window window, LabellingKind kind)
        : hbar_(hbar), window_(window), kind_(kind) {}

    PlanckValue hbar() const { return hbar_; }
    const Window& window() const { return window_; }
    LabellingKind kind() const { return kind_; }

    // fails with DuplicateAssignment if injectivity would break
    void assign(Point2 p, Label2 k);

    std::optional<Label2> label_of(Point2 p) const;
    std::optional<Point2> point_of(Label2 k) const;
    bool has_label(Label2 k) const { return by_label_.count(k) > 0; }

    const std::vector<std::pair<Point2, Label2>>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    PlanckValue hbar_;
    Window window_;
    LabellingKind kind_;
    std::vector<std::pair<Point2, Label2>> entries_;
    std::unordered_map<Point2, Label2, Point2Hash> by_point_;
    std::unordered_map<Label2, Point2, Label2Hash> by_label_;
};

} // namespace asymlat
