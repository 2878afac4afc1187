#pragma once

#include <algorithm>
#include <string>

namespace bmo {

/// Closed interval [lo, hi] on the real line.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool degenerate() const { return !(lo < hi); }

    friend bool operator==(const Interval&, const Interval&) = default;
};

inline double overlap(const Interval& a, const Interval& b) {
    return std::max(0.0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo));
}

/// Parses "LO:HI".
Interval parse_interval(const std::string& text);

std::string to_string(const Interval& i);

}  // namespace bmo
