#include "bmo/oscillation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>

#include "bmo/error.hpp"
#include "search.hpp"

namespace bmo {

std::string to_string(OscMode m) { return m == OscMode::L1 ? "L1" : "L2"; }

OscMode parse_mode(const std::string& text) {
    if (text == "L1" || text == "l1") return OscMode::L1;
    if (text == "L2" || text == "l2") return OscMode::L2;
    reject("mode must be L1 or L2, got '" + text + "'");
}

void write_report_csv_header(std::ostream& out, bool two_d) {
    out << "family,window_lo,window_hi,refine,mode,delta,value,argmax_lo,argmax_hi";
    if (two_d) out << ",window_y_lo,window_y_hi,argmax_y_lo,argmax_y_hi";
    out << '\n';
}

void write_report_csv(std::ostream& out, const OscillationReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%d,%s,%.17g,%.17g,%.17g,%.17g", r.family.c_str(),
                  r.window.lo, r.window.hi, r.refinement_level, to_string(r.mode).c_str(), r.delta,
                  r.value, r.argmax.lo, r.argmax.hi);
    out << buf;
    if (r.window_y && r.argmax_y) {
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g", r.window_y->lo, r.window_y->hi,
                      r.argmax_y->lo, r.argmax_y->hi);
        out << buf;
    }
    out << '\n';
}

namespace {

double exact_osc(const StepFunction1D& g, double a, double b, OscMode mode) {
    const double L = b - a;
    // Mean taken relative to the first piece so constant stretches give exactly 0.
    double v0 = 0.0, s = 0.0;
    bool first = true;
    for_each_piece(g, a, b, [&](double v, double w) {
        if (first) v0 = v, first = false;
        s += (v - v0) * w;
    });
    const double m = v0 + s / L;
    double d = 0.0;
    if (mode == OscMode::L1) {
        for_each_piece(g, a, b, [&](double v, double w) { d += std::abs(v - m) * w; });
        return d / L;
    }
    for_each_piece(g, a, b, [&](double v, double w) { d += (v - m) * (v - m) * w; });
    return std::sqrt(d / L);
}

constexpr std::size_t kTreeMinCells = 64;
constexpr std::size_t kTreeMaxCells = std::size_t{1} << 18;
constexpr std::size_t kTreeMinSpan = 32;

// Prefix sums of (f - mu), (f - mu)^2, |f - mu| and range min/max over the
// cells of f restricted to a window.
class Index1D {
public:
    struct Pt {
        double x, p1, p2, a1;
        std::size_t kr;  // first cell to the right of x (n when x is the right edge)
        std::size_t kl;  // last cell to the left of x (npos when x is the left edge)
    };

    Index1D(const StepFunction1D& f, Interval window) : g_(f.restricted(window)) {
        const auto& bp = g_.breakpoints();
        const auto& v = g_.values();
        const std::size_t n = v.size();
        mu_ = 0.0;
        for (std::size_t i = 0; i < n; ++i) mu_ += v[i] * (bp[i + 1] - bp[i]);
        mu_ /= window.length();
        P1_.assign(n + 1, 0.0);
        P2_.assign(n + 1, 0.0);
        A1_.assign(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double w = bp[i + 1] - bp[i], d = v[i] - mu_;
            P1_[i + 1] = P1_[i] + d * w;
            P2_[i + 1] = P2_[i] + d * d * w;
            A1_[i + 1] = A1_[i] + std::abs(d) * w;
            vmax_ = std::max(vmax_, std::abs(v[i]));
        }
        gamma_ = (static_cast<double>(n) + 8.0) * std::numeric_limits<double>::epsilon();
        slack_ = 1e-12 * (vmax_ + std::numeric_limits<double>::min());
        mn_.push_back(v);
        mx_.push_back(v);
        for (std::size_t len = 2; len <= n; len *= 2) {
            const auto& pm = mn_.back();
            const auto& pM = mx_.back();
            std::vector<double> a(n - len + 1), b(n - len + 1);
            for (std::size_t i = 0; i + len <= n; ++i) {
                a[i] = std::min(pm[i], pm[i + len / 2]);
                b[i] = std::max(pM[i], pM[i + len / 2]);
            }
            mn_.push_back(std::move(a));
            mx_.push_back(std::move(b));
        }
        if (n >= kTreeMinCells && n <= kTreeMaxCells) {
            std::vector<std::size_t> order(n);
            for (std::size_t i = 0; i < n; ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return v[x] < v[y]; });
            std::vector<std::size_t> rank(n);
            sorted_d_.resize(n);
            for (std::size_t r = 0; r < n; ++r) {
                rank[order[r]] = r;
                sorted_d_[r] = v[order[r]] - mu_;
            }
            nodes_.reserve(1 + n * (std::bit_width(n) + 1));
            nodes_.push_back({});
            roots_.assign(1, 0);
            for (std::size_t i = 0; i < n; ++i) {
                const double w = bp[i + 1] - bp[i];
                roots_.push_back(insert(roots_.back(), 0, n, rank[i], w, w * (v[i] - mu_)));
            }
        }
    }

    const StepFunction1D& g() const { return g_; }

    Pt point(double x) const {
        const auto& bp = g_.breakpoints();
        const auto& v = g_.values();
        const std::size_t n = v.size();
        std::size_t k;
        if (x >= bp.back()) {
            k = n - 1;
        } else {
            k = static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), x) - bp.begin()) - 1;
        }
        double dx = x - bp[k], d = v[k] - mu_;
        Pt p{x, P1_[k] + d * dx, P2_[k] + d * d * dx, A1_[k] + std::abs(d) * dx, k, k};
        if (x >= bp.back()) p.kr = n;
        if (x == bp[k]) p.kl = (k == 0) ? StepFunction1D::npos : k - 1;
        return p;
    }

    double bound(const Pt& a, const Pt& b, OscMode mode) const {
        const double L = b.x - a.x;
        const double m = (b.p1 - a.p1) / L;
        const double e1 = gamma_ * (a.a1 + b.a1) / L;
        const double e2 = gamma_ * (a.p2 + b.p2) / L;
        const double second = (b.p2 - a.p2) / L;
        double var = second - m * m;
        double err = e2 + 2.0 * std::abs(m) * e1 + e1 * e1 + 4.0 * gamma_ * (std::abs(second) + m * m);
        double l2 = std::sqrt(std::max(0.0, var) + err);
        if (mode == OscMode::L2) return l2 + slack_;
        // Two-point bound: mean deviation given the range [lo, hi] and the mean.
        auto [lo, hi] = range(a.kr, b.kl);
        double tp = 0.0;
        if (hi > lo) {
            double mm = std::clamp(mu_ + m, lo, hi);
            tp = 2.0 * (hi - mm) * (mm - lo) / (hi - lo) + 2.0 * e1;
        }
        return std::min(l2, tp) + slack_;
    }

    double exact(double a, double b, OscMode mode) const {
        if (mode == OscMode::L2 || roots_.empty()) return exact_osc(g_, a, b, mode);
        const auto& bp = g_.breakpoints();
        const auto& v = g_.values();
        const std::size_t ka = static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), a) - bp.begin()) - 1;
        const std::size_t kb = static_cast<std::size_t>(std::lower_bound(bp.begin(), bp.end(), b) - bp.begin()) - 1;
        if (kb < ka + kTreeMinSpan) return exact_osc(g_, a, b, mode);
        auto [lo, hi] = range(ka, kb);
        if (lo == hi) return 0.0;
        // Full cells ka+1 .. kb-1 from the tree, the two end pieces directly.
        const double L = b - a;
        const double wa = bp[ka + 1] - a, wb = b - bp[kb];
        const double da = v[ka] - mu_, db = v[kb] - mu_;
        const double full_p1 = P1_[kb] - P1_[ka + 1];
        const double m = (full_p1 + da * wa + db * wb) / L;
        const std::size_t k = static_cast<std::size_t>(
            std::upper_bound(sorted_d_.begin(), sorted_d_.end(), m) - sorted_d_.begin());
        auto [w, wd] = upper_sums(roots_[kb], roots_[ka + 1], k);
        double pos = wd - m * w;
        if (da > m) pos += (da - m) * wa;
        if (db > m) pos += (db - m) * wb;
        return std::max(0.0, 2.0 * pos / L);
    }

private:
    std::pair<double, double> range(std::size_t i, std::size_t j) const {
        std::size_t len = j - i + 1;
        std::size_t lev = 0;
        while ((std::size_t{2} << lev) <= len) ++lev;
        std::size_t w = std::size_t{1} << lev;
        return {std::min(mn_[lev][i], mn_[lev][j + 1 - w]),
                std::max(mx_[lev][i], mx_[lev][j + 1 - w])};
    }

    StepFunction1D g_;
    double mu_ = 0.0;
    double vmax_ = 0.0;
    double gamma_ = 0.0;
    double slack_ = 0.0;
    std::vector<double> P1_, P2_, A1_;
    std::vector<std::vector<double>> mn_, mx_;

    // Persistent segment tree over the cells' value ranks: version k holds
    // cells [0, k) and every node stores the summed width and width * (v - mu).
    struct Node {
        std::uint32_t l = 0, r = 0;
        double w = 0.0, wd = 0.0;
    };
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> roots_;
    std::vector<double> sorted_d_;

    std::uint32_t insert(std::uint32_t prev, std::size_t lo, std::size_t hi, std::size_t pos, double w,
                         double wd) {
        Node n = nodes_[prev];
        n.w += w;
        n.wd += wd;
        const auto id = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back(n);
        if (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (pos < mid) {
                const auto c = insert(n.l, lo, mid, pos, w, wd);
                nodes_[id].l = c;
            } else {
                const auto c = insert(n.r, mid, hi, pos, w, wd);
                nodes_[id].r = c;
            }
        }
        return id;
    }

    // Sums over cells of versions (lo_v, hi_v] with rank >= k.
    std::pair<double, double> upper_sums(std::uint32_t hi_v, std::uint32_t lo_v, std::size_t k) const {
        double w = 0.0, wd = 0.0;
        std::size_t lo = 0, hi = sorted_d_.size();
        while (hi - lo > 1 && (hi_v || lo_v)) {
            const std::size_t mid = (lo + hi) / 2;
            if (k < mid) {
                // The whole right half is counted.
                w += nodes_[nodes_[hi_v].r].w - nodes_[nodes_[lo_v].r].w;
                wd += nodes_[nodes_[hi_v].r].wd - nodes_[nodes_[lo_v].r].wd;
                hi_v = nodes_[hi_v].l;
                lo_v = nodes_[lo_v].l;
                hi = mid;
            } else {
                hi_v = nodes_[hi_v].r;
                lo_v = nodes_[lo_v].r;
                lo = mid;
            }
        }
        if (k <= lo) {
            w += nodes_[hi_v].w - nodes_[lo_v].w;
            wd += nodes_[hi_v].wd - nodes_[lo_v].wd;
        }
        return {w, wd};
    }
};

struct PairIdx {
    std::uint32_t i, j;
};

template <class Each>
OscillationReport run_pairs(const Index1D& idx, const std::vector<Index1D::Pt>& lefts,
                            const std::vector<Index1D::Pt>& rights, Each&& each, OscMode mode) {
    auto bound = [&](const PairIdx& c) { return idx.bound(lefts[c.i], rights[c.j], mode); };
    auto exact = [&](const PairIdx& c) { return idx.exact(lefts[c.i].x, rights[c.j].x, mode); };
    auto before = [&](const PairIdx& x, const PairIdx& y) {
        double xl = lefts[x.i].x, yl = lefts[y.i].x;
        if (xl != yl) return xl < yl;
        return rights[x.j].x - xl < rights[y.j].x - yl;
    };
    auto res = detail::certified_max<PairIdx>(each, bound, exact, before);
    OscillationReport r;
    r.mode = mode;
    r.candidates = res.scored;
    r.exact_evaluations = res.exact;
    if (!res.found) reject("empty candidate family");
    r.value = res.value;
    r.argmax = {lefts[res.best.i].x, rights[res.best.j].x};
    return r;
}

}  // namespace

double average(const StepFunction1D& f, Interval I) {
    if (I.degenerate()) reject("average over an empty interval");
    return integrate(f, I.lo, I.hi) / I.length();
}

double mean_osc(const StepFunction1D& f, Interval I, OscMode mode) {
    if (I.degenerate()) reject("mean oscillation over an empty interval");
    return exact_osc(f, I.lo, I.hi, mode);
}

double mean_osc(const StepFunction1D& f, const std::vector<Interval>& A, OscMode mode) {
    if (A.empty()) reject("empty interval union");
    auto sorted = A;
    std::sort(sorted.begin(), sorted.end(), [](auto& x, auto& y) { return x.lo < y.lo; });
    double total = 0.0, s = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].degenerate()) reject("empty interval in union");
        if (i > 0 && sorted[i].lo < sorted[i - 1].hi) reject("overlapping intervals in union");
        total += sorted[i].length();
        for_each_piece(f, sorted[i].lo, sorted[i].hi, [&](double v, double w) { s += v * w; });
    }
    const double m = s / total;
    double d = 0.0;
    for (const auto& I : sorted)
        for_each_piece(f, I.lo, I.hi, [&](double v, double w) {
            d += mode == OscMode::L1 ? std::abs(v - m) * w : (v - m) * (v - m) * w;
        });
    return mode == OscMode::L1 ? d / total : std::sqrt(d / total);
}

std::vector<double> candidate_points(const StepFunction1D& f, Interval window, int level) {
    if (window.degenerate()) reject("search window is empty");
    if (level < 0 || level > 30) reject("refinement level must be in [0, 30]");
    std::vector<double> pts;
    const std::size_t count = std::size_t{1} << level;
    const double h = std::ldexp(window.length(), -level);
    pts.reserve(count + 1 + f.breakpoints().size());
    for (std::size_t i = 0; i < count; ++i) pts.push_back(window.lo + static_cast<double>(i) * h);
    pts.push_back(window.hi);
    for (double b : f.breakpoints())
        if (b > window.lo && b < window.hi) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

OscillationReport bmo_norm_1d(const StepFunction1D& f, Interval window, int refinement_level,
                              OscMode mode) {
    auto cand = candidate_points(f, window, refinement_level);
    if (cand.size() > 200000) reject("too many candidate endpoints for an all-pairs search");
    Index1D idx(f, window);
    std::vector<Index1D::Pt> pts;
    pts.reserve(cand.size());
    for (double x : cand) pts.push_back(idx.point(x));
    const auto n = static_cast<std::uint32_t>(pts.size());
    auto each = [&](auto&& cb) {
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j) cb(PairIdx{i, j});
    };
    auto r = run_pairs(idx, pts, pts, each, mode);
    r.family = "intervals";
    r.window = window;
    r.refinement_level = refinement_level;
    return r;
}

OscillationReport omega(const StepFunction1D& f, double delta, Interval window,
                        int refinement_level, OscMode mode) {
    if (!(delta > 0.0)) reject("delta must be positive");
    auto cand = candidate_points(f, window, refinement_level);
    const double spacing = std::ldexp(window.length(), -refinement_level);
    if (spacing > delta / 8.0)
        reject("candidate grid too coarse for delta: spacing must be at most delta/8");
    Index1D idx(f, window);
    std::vector<Index1D::Pt> pts;
    pts.reserve(cand.size());
    for (double x : cand) pts.push_back(idx.point(x));
    const auto n = static_cast<std::uint32_t>(pts.size());
    auto each = [&](auto&& cb) {
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n && pts[j].x - pts[i].x <= delta; ++j)
                cb(PairIdx{i, j});
    };
    auto r = run_pairs(idx, pts, pts, each, mode);
    r.family = "intervals<=delta";
    r.window = window;
    r.refinement_level = refinement_level;
    r.delta = delta;
    return r;
}

OscillationReport fixed_length_osc(const StepFunction1D& f, double len,
                                   const std::vector<double>& starts, Interval window,
                                   OscMode mode) {
    if (!(len > 0.0) || len > window.length()) reject("interval length must fit the window");
    Index1D idx(f, window);
    std::vector<double> a;
    for (double s : starts)
        if (s >= window.lo && s + len <= window.hi) a.push_back(s);
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::vector<Index1D::Pt> lefts, rights;
    for (double s : a) {
        lefts.push_back(idx.point(s));
        rights.push_back(idx.point(s + len));
    }
    const auto n = static_cast<std::uint32_t>(lefts.size());
    auto each = [&](auto&& cb) {
        for (std::uint32_t i = 0; i < n; ++i) cb(PairIdx{i, i});
    };
    auto r = run_pairs(idx, lefts, rights, each, mode);
    r.family = "intervals=len";
    r.window = window;
    r.delta = len;
    return r;
}

OscillationReport bmo_norm_1d_exhaustive(const StepFunction1D& f, Interval window,
                                         int refinement_level, OscMode mode) {
    auto cand = candidate_points(f, window, refinement_level);
    auto g = f.restricted(window);
    OscillationReport r;
    r.family = "intervals";
    r.window = window;
    r.refinement_level = refinement_level;
    r.mode = mode;
    bool found = false;
    for (std::size_t i = 0; i < cand.size(); ++i)
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
            double v = exact_osc(g, cand[i], cand[j], mode);
            ++r.exact_evaluations;
            if (!found || v > r.value) {
                r.value = v;
                r.argmax = {cand[i], cand[j]};
                found = true;
            }
        }
    r.candidates = r.exact_evaluations;
    return r;
}

SubsetOsc subset_osc(const StepFunction1D& f, Interval Q, const std::vector<Interval>& A) {
    if (Q.degenerate()) reject("Q is empty");
    if (A.empty()) reject("A is empty");
    auto sorted = A;
    std::sort(sorted.begin(), sorted.end(), [](auto& x, auto& y) { return x.lo < y.lo; });
    double measure = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].degenerate()) reject("A contains an empty interval");
        if (!Q.contains(sorted[i])) reject("A must be contained in Q");
        if (i > 0 && sorted[i].lo < sorted[i - 1].hi) reject("A contains overlapping intervals");
        measure += sorted[i].length();
    }
    double s = 0.0;
    for_each_piece(f, Q.lo, Q.hi, [&](double v, double w) { s += v * w; });
    const double fQ = s / Q.length();
    double d = 0.0;
    for (const auto& I : sorted)
        for_each_piece(f, I.lo, I.hi, [&](double v, double w) { d += std::abs(v - fQ) * w; });
    return {d / measure, 1.0 + std::log(Q.length() / measure)};
}

double discrete_mean_osc(const std::vector<double>& samples) {
    if (samples.empty()) reject("no samples");
    double shift = 0.0;
    for (double v : samples) shift += v - samples[0];
    const double mean = samples[0] + shift / static_cast<double>(samples.size());
    double d = 0.0;
    for (double v : samples) d += std::abs(v - mean);
    return d / static_cast<double>(samples.size());
}

}  // namespace bmo
