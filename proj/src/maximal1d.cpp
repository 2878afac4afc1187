#include "bmo/maximal1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "bmo/error.hpp"

namespace bmo {

ChordEnvelope::ChordEnvelope(const StepFunction1D& f, Interval window) : window_(window) {
    if (window.degenerate()) reject("maximal window is empty");
    auto g = f.restricted(window);
    const auto& bp = g.breakpoints();
    const auto& v = g.values();
    v_.reserve(bp.size());
    slope_.reserve(v.size());
    double F = 0.0;
    v_.push_back({bp[0], 0.0});
    for (std::size_t i = 0; i < v.size(); ++i) {
        double s = std::abs(v[i]);
        F += s * (bp[i + 1] - bp[i]);
        v_.push_back({bp[i + 1], F});
        slope_.push_back(s);
    }
}

double ChordEnvelope::at(double x) const {
    if (x <= v_.front().x) return 0.0;
    if (x >= v_.back().x) return v_.back().F;
    auto it = std::upper_bound(v_.begin(), v_.end(), x,
                               [](double t, const Vertex& p) { return t < p.x; });
    std::size_t i = static_cast<std::size_t>(it - v_.begin()) - 1;
    return v_[i].F + slope_[i] * (x - v_[i].x);
}

namespace {

std::string coord(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double query(const ChordEnvelope& env, double x) {
    const auto& v = env.vertices();
    auto split = std::lower_bound(v.begin(), v.end(), x,
                                  [](const Vertex& p, double t) { return p.x < t; });
    Vertex q{x, env.at(x)};
    std::vector<Vertex> left(v.begin(), split);
    left.push_back(q);
    auto from = (split != v.end() && split->x == x) ? split + 1 : split;
    std::vector<Vertex> right{q};
    right.insert(right.end(), from, v.end());
    return max_chord_slope(left, right).slope;
}

}  // namespace

double mhl_point(const StepFunction1D& f, double x, Interval window) {
    if (!window.contains(x)) reject("query x = " + coord(x) + " lies outside the window");
    ChordEnvelope env(f, window);
    return query(env, x);
}

std::vector<MaximalSample> mhl_profile(const StepFunction1D& f, const std::vector<double>& queries,
                                       Interval window) {
    if (!std::is_sorted(queries.begin(), queries.end())) reject("queries must be sorted");
    std::vector<MaximalSample> out;
    if (queries.empty()) return out;
    ChordEnvelope env(f, window);
    out.reserve(queries.size());
    for (double x : queries) {
        if (!window.contains(x)) reject("query x = " + coord(x) + " lies outside the window");
        out.push_back({x, query(env, x)});
    }
    return out;
}

double mhl_brute(const StepFunction1D& f, double x, Interval window) {
    if (!window.contains(x)) reject("query x = " + coord(x) + " lies outside the window");
    auto g = abs(f);
    std::vector<double> pts{window.lo, window.hi, x};
    for (double b : f.breakpoints())
        if (window.contains(b)) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double best = 0.0;
    for (double a : pts) {
        if (a > x) break;
        for (double b : pts) {
            if (b < x || b <= a) continue;
            best = std::max(best, integrate(g, a, b) / (b - a));
        }
    }
    return best;
}

ScaleSplit mhl_scale_split(const StepFunction1D& f, double x, Interval Q0, double cfactor,
                           Interval window) {
    if (!(cfactor > std::exp(1.0))) reject("cfactor must exceed e");
    if (Q0.degenerate()) reject("Q0 is empty");
    if (!Q0.contains(x)) reject("x must lie in Q0");
    if (!window.contains(Q0)) reject("Q0 must lie in the window");
    ChordEnvelope env(f, window);
    const double L = cfactor * Q0.length();

    std::vector<double> pts{x};
    for (const auto& v : env.vertices()) pts.push_back(v.x);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    ScaleSplit out;
    auto score = [&](double a, double b) { return (env.at(b) - env.at(a)) / (b - a); };
    std::vector<double> F(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) F[i] = env.at(pts[i]);
    const std::size_t ix = std::lower_bound(pts.begin(), pts.end(), x) - pts.begin();
    // Pairs of candidate points: the average is monotone in each endpoint
    // between breakpoints, so the constrained optimum sits at a breakpoint pair
    // or slides along the boundary b - a = L.
    for (std::size_t i = 0; i <= ix; ++i) {
        for (std::size_t j = std::max(ix, i + 1); j < pts.size(); ++j) {
            const double len = pts[j] - pts[i];
            const double s = (F[j] - F[i]) / len;
            if (len <= L) out.local = std::max(out.local, s);
            if (len >= L) out.nonlocal = std::max(out.nonlocal, s);
        }
    }
    for (double p : pts) {
        for (auto [a, b] : {std::pair{p, p + L}, std::pair{p - L, p}}) {
            if (a < window.lo || b > window.hi || a > x || b < x) continue;
            double s = score(a, b);
            out.local = std::max(out.local, s);
            out.nonlocal = std::max(out.nonlocal, s);
        }
    }
    return out;
}

bool is_dyadic(Interval I) {
    double len = I.length();
    if (!(len > 0.0) || !std::isfinite(len)) return false;
    int e = 0;
    if (std::frexp(len, &e) != 0.5) return false;
    double k = I.lo / len;
    return k == std::floor(k) && k * len == I.lo && I.lo + len == I.hi;
}

DyadicNonlocal dyadic_nonlocal(const StepFunction1D& f, Interval Q0, Interval window) {
    if (!is_dyadic(Q0)) reject("Q0 = " + to_string(Q0) + " is not dyadic");
    if (!window.contains(Q0)) reject("Q0 must lie in the window");
    const double len = Q0.length();

    // Dyadic intervals of length len * 2^j containing x, while they fit the window.
    auto sup_at = [&](double x) {
        double best = -INFINITY;
        for (double size = len; size <= window.length(); size *= 2.0) {
            double start = std::floor(x / size) * size;
            Interval Q{start, start + size};
            if (!window.contains(Q)) continue;
            best = std::max(best, integrate(f, Q.lo, Q.hi) / size);
        }
        return best;
    };

    DyadicNonlocal out;
    out.value = sup_at(Q0.mid());
    constexpr int kSamples = 16;
    double vals[kSamples];
    double shift = 0.0;
    for (int s = 0; s < kSamples; ++s) vals[s] = sup_at(Q0.lo + (s + 0.5) / kSamples * len);
    for (int s = 0; s < kSamples; ++s) shift += vals[s] - vals[0];
    double mean = vals[0] + shift / kSamples;
    for (double v : vals) out.osc_on_Q0 += std::abs(v - mean);
    out.osc_on_Q0 /= kSamples;
    return out;
}

void write_profile_csv(std::ostream& out, const std::vector<MaximalSample>& rows) {
    out << "x,value\n";
    char buf[96];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r.x, r.value);
        out << buf;
    }
}

}  // namespace bmo
