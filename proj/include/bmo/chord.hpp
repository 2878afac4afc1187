#pragma once

#include <utility>
#include <vector>

namespace bmo {

/// Vertex of a piecewise-linear antiderivative.
struct Vertex {
    double x;
    double F;
};

struct ChordMax {
    double slope = 0.0;
    double a = 0.0;
    double b = 0.0;
    bool found = false;
};

/// max over a in `left`, b in `right`, a < b, of (F(b) - F(a)) / (b - a).
/// Both lists sorted by x, every left x <= every right x. Pairs sharing the
/// same x are skipped. Uses the lower hull of `left` and the upper hull of
/// `right` with a tangent search per left hull vertex.
ChordMax max_chord_slope(const std::vector<Vertex>& left, const std::vector<Vertex>& right);

/// O(|left| * |right|) reference for max_chord_slope.
ChordMax max_chord_slope_brute(const std::vector<Vertex>& left, const std::vector<Vertex>& right);

}  // namespace bmo
