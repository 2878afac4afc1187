#include "bmo/chord.hpp"

namespace bmo {

namespace {

// (b - a) x (c - a) > 0 means c lies strictly above the line through a, b.
double cross(const Vertex& a, const Vertex& b, const Vertex& c) {
    return (b.x - a.x) * (c.F - a.F) - (b.F - a.F) * (c.x - a.x);
}

std::vector<Vertex> lower_hull(const std::vector<Vertex>& pts, std::size_t begin, std::size_t end) {
    std::vector<Vertex> h;
    for (std::size_t i = begin; i < end; ++i) {
        while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), pts[i]) <= 0.0) h.pop_back();
        h.push_back(pts[i]);
    }
    return h;
}

std::vector<Vertex> upper_hull(const std::vector<Vertex>& pts, std::size_t begin, std::size_t end) {
    std::vector<Vertex> h;
    for (std::size_t i = begin; i < end; ++i) {
        while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), pts[i]) >= 0.0) h.pop_back();
        h.push_back(pts[i]);
    }
    return h;
}

double slope(const Vertex& a, const Vertex& b) { return (b.F - a.F) / (b.x - a.x); }

void consider(ChordMax& best, const Vertex& a, const Vertex& b) {
    double s = slope(a, b);
    if (!best.found || s > best.slope) best = {s, a.x, b.x, true};
}

// Strictly separated lists: every left x < every right x.
ChordMax separated(const std::vector<Vertex>& left, std::size_t l0, std::size_t l1,
                   const std::vector<Vertex>& right, std::size_t r0, std::size_t r1) {
    ChordMax best;
    if (l0 >= l1 || r0 >= r1) return best;
    auto lo = lower_hull(left, l0, l1);
    auto up = upper_hull(right, r0, r1);
    for (const auto& a : lo) {
        // Slopes from a along the upper hull are unimodal; find the peak.
        std::size_t i = 0, j = up.size() - 1;
        while (i < j) {
            std::size_t m = i + (j - i) / 2;
            if (cross(a, up[m], up[m + 1]) > 0.0) i = m + 1; else j = m;
        }
        consider(best, a, up[i]);
    }
    return best;
}

ChordMax better(const ChordMax& x, const ChordMax& y) {
    if (!x.found) return y;
    if (!y.found) return x;
    return y.slope > x.slope ? y : x;
}

}  // namespace

ChordMax max_chord_slope(const std::vector<Vertex>& left, const std::vector<Vertex>& right) {
    if (left.empty() || right.empty()) return {};
    if (left.back().x == right.front().x) {
        auto one = separated(left, 0, left.size() - 1, right, 0, right.size());
        auto two = separated(left, 0, left.size(), right, 1, right.size());
        return better(one, two);
    }
    return separated(left, 0, left.size(), right, 0, right.size());
}

ChordMax max_chord_slope_brute(const std::vector<Vertex>& left, const std::vector<Vertex>& right) {
    ChordMax best;
    for (const auto& a : left)
        for (const auto& b : right)
            if (a.x < b.x) consider(best, a, b);
    return best;
}

}  // namespace bmo
