#include "bmo/plane.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include "bmo/chord.hpp"
#include "bmo/error.hpp"
#include "bmo/maximal1d.hpp"
#include "search.hpp"

namespace bmo {

namespace {

double exact_osc_2d(const GridFunction2D& g, const Rect& R, OscMode mode) {
    const double area = R.area();
    double v0 = 0.0, s = 0.0;
    bool first = true;
    for_each_cell_piece(g, R, [&](double v, double a) {
        if (first) v0 = v, first = false;
        s += (v - v0) * a;
    });
    const double m = v0 + s / area;
    double d = 0.0;
    if (mode == OscMode::L1) {
        for_each_cell_piece(g, R, [&](double v, double a) { d += std::abs(v - m) * a; });
        return d / area;
    }
    for_each_cell_piece(g, R, [&](double v, double a) { d += (v - m) * (v - m) * a; });
    return std::sqrt(d / area);
}

std::vector<double> clip_edges(const std::vector<double>& e, Interval w) {
    std::vector<double> out{w.lo};
    for (double x : e)
        if (x > w.lo && x < w.hi) out.push_back(x);
    out.push_back(w.hi);
    return out;
}

// The same function on a grid whose outer edges are exactly the window.
GridFunction2D restrict_grid(const GridFunction2D& g, const Rect& w) {
    auto xe = clip_edges(g.x_edges(), w.x);
    auto ye = clip_edges(g.y_edges(), w.y);
    const std::size_t nx = xe.size() - 1, ny = ye.size() - 1;
    std::vector<double> v(nx * ny);
    for (std::size_t j = 0; j < ny; ++j) {
        const double ym = 0.5 * (ye[j] + ye[j + 1]);
        for (std::size_t i = 0; i < nx; ++i) v[j * nx + i] = g(0.5 * (xe[i] + xe[i + 1]), ym);
    }
    return GridFunction2D(std::move(xe), std::move(ye), std::move(v));
}

std::vector<double> axis_candidates(const std::vector<double>& edges, Interval w, int level) {
    if (w.degenerate()) reject("search window is empty");
    if (level < 0 || level > 16) reject("2D refinement level must be in [0, 16]");
    std::vector<double> pts;
    const std::size_t count = std::size_t{1} << level;
    const double h = std::ldexp(w.length(), -level);
    for (std::size_t i = 0; i < count; ++i) pts.push_back(w.lo + static_cast<double>(i) * h);
    pts.push_back(w.hi);
    for (double e : edges)
        if (e > w.lo && e < w.hi) pts.push_back(e);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

struct Loc {
    double t;       // coordinate
    std::size_t c;  // cell index
    double f;       // fraction of the cell to the left of t
};

Loc locate(const std::vector<double>& e, double t) {
    std::size_t c;
    if (t >= e.back()) {
        c = e.size() - 2;
    } else if (t <= e.front()) {
        c = 0;
    } else {
        c = static_cast<std::size_t>(std::upper_bound(e.begin(), e.end(), t) - e.begin()) - 1;
    }
    return {t, c, (t - e[c]) / (e[c + 1] - e[c])};
}

// Prefix integrals of (g - mu), (g - mu)^2 and |g - mu| at the grid edges,
// extended bilinearly inside each cell (exact for piecewise constants).
class Index2D {
public:
    explicit Index2D(const GridFunction2D& g) : g_(g), nx_(g.nx()), ny_(g.ny()) {
        const auto& xe = g.x_edges();
        const auto& ye = g.y_edges();
        const Rect span = g.span();
        double s = 0.0;
        for (std::size_t j = 0; j < ny_; ++j)
            for (std::size_t i = 0; i < nx_; ++i)
                s += g.at(i, j) * (xe[i + 1] - xe[i]) * (ye[j + 1] - ye[j]);
        mu_ = s / span.area();
        const std::size_t W = nx_ + 1;
        P1_.assign(W * (ny_ + 1), 0.0);
        P2_ = P1_;
        A1_ = P1_;
        for (std::size_t j = 0; j < ny_; ++j) {
            double r1 = 0.0, r2 = 0.0, ra = 0.0;
            const double h = ye[j + 1] - ye[j];
            for (std::size_t i = 0; i < nx_; ++i) {
                const double a = (xe[i + 1] - xe[i]) * h, d = g.at(i, j) - mu_;
                r1 += d * a;
                r2 += d * d * a;
                ra += std::abs(d) * a;
                const std::size_t k = (j + 1) * W + i + 1;
                P1_[k] = P1_[k - W] + r1;
                P2_[k] = P2_[k - W] + r2;
                A1_[k] = A1_[k - W] + ra;
            }
        }
        for (double v : g.values()) vmax_ = std::max(vmax_, std::abs(v));
        gamma_ = (static_cast<double>(nx_ + ny_) + 16.0) * std::numeric_limits<double>::epsilon();
        slack_ = 1e-12 * (vmax_ + std::numeric_limits<double>::min());
    }

    const GridFunction2D& grid() const { return g_; }
    Loc lx(double x) const { return locate(g_.x_edges(), x); }
    Loc ly(double y) const { return locate(g_.y_edges(), y); }

    struct Sums {
        double p1, p2, a1;
    };

    Sums at(const Loc& X, const Loc& Y) const {
        const std::size_t W = nx_ + 1, i = X.c, j = Y.c;
        const std::size_t k00 = j * W + i, k10 = k00 + 1, k01 = k00 + W;
        const double dxdy = (X.t - g_.x_edges()[i]) * (Y.t - g_.y_edges()[j]);
        const double d = g_.at(i, j) - mu_;
        auto one = [&](const std::vector<double>& P, double cell) {
            return P[k00] + X.f * (P[k10] - P[k00]) + Y.f * (P[k01] - P[k00]) + dxdy * cell;
        };
        return {one(P1_, d), one(P2_, d * d), one(A1_, std::abs(d))};
    }

    double bound(const Loc& a, const Loc& b, const Loc& c, const Loc& d) const {
        const Sums s00 = at(a, c), s10 = at(b, c), s01 = at(a, d), s11 = at(b, d);
        const double area = (b.t - a.t) * (d.t - c.t);
        const double m = (s11.p1 - s10.p1 - s01.p1 + s00.p1) / area;
        const double second = (s11.p2 - s10.p2 - s01.p2 + s00.p2) / area;
        const double e1 = gamma_ * (s00.a1 + s10.a1 + s01.a1 + s11.a1) / area;
        const double e2 = gamma_ * (s00.p2 + s10.p2 + s01.p2 + s11.p2) / area;
        const double var = second - m * m;
        const double err =
            e2 + 2.0 * std::abs(m) * e1 + e1 * e1 + 4.0 * gamma_ * (std::abs(second) + m * m);
        return std::sqrt(std::max(0.0, var) + err) + slack_;
    }

private:
    const GridFunction2D& g_;
    std::size_t nx_, ny_;
    double mu_ = 0.0, vmax_ = 0.0, gamma_ = 0.0, slack_ = 0.0;
    std::vector<double> P1_, P2_, A1_;
};

struct RectCand {
    std::uint32_t ia, ib, jc, jd;
    // Squares: the side comes from the x pair (ia, ib) or the y pair (jc, jd);
    // the other far coordinate is not a candidate and is located on demand.
    std::uint8_t side_from = 0;  // 0: both candidates, 1: x pair, 2: y pair
};

struct Setup {
    GridFunction2D g;
    std::vector<double> xs, ys;
    std::vector<Loc> lxs, lys;
};

Setup make_setup(const GridFunction2D& f, const Rect& window, int level) {
    if (window.degenerate()) reject("search window is empty");
    Setup s{restrict_grid(f, window), {}, {}, {}, {}};
    s.xs = axis_candidates(s.g.x_edges(), window.x, level);
    s.ys = axis_candidates(s.g.y_edges(), window.y, level);
    if (s.xs.size() > 20000 || s.ys.size() > 20000) reject("too many candidate corners");
    for (double x : s.xs) s.lxs.push_back(locate(s.g.x_edges(), x));
    for (double y : s.ys) s.lys.push_back(locate(s.g.y_edges(), y));
    return s;
}

Rect rect_of(const Setup& s, const RectCand& c) {
    const double a = s.xs[c.ia], cy = s.ys[c.jc];
    if (c.side_from == 1) return {{a, s.xs[c.ib]}, {cy, cy + (s.xs[c.ib] - a)}};
    if (c.side_from == 2) return {{a, a + (s.ys[c.jd] - cy)}, {cy, s.ys[c.jd]}};
    return {{a, s.xs[c.ib]}, {cy, s.ys[c.jd]}};
}

// Streams the family to cb(RectCand).
template <class Cb>
void enumerate_family(const Setup& s, const Rect& window, RectFamily fam, Cb&& cb) {
    const auto nxs = static_cast<std::uint32_t>(s.xs.size());
    const auto nys = static_cast<std::uint32_t>(s.ys.size());
    if (fam.kind == RectFamily::Squares) {
        for (std::uint32_t ia = 0; ia < nxs; ++ia)
            for (std::uint32_t jc = 0; jc < nys; ++jc) {
                const double a = s.xs[ia], c = s.ys[jc];
                std::uint32_t ib = ia + 1, jd = jc + 1;
                while (true) {
                    double sx = ib < nxs && c + (s.xs[ib] - a) <= window.y.hi ? s.xs[ib] - a : INFINITY;
                    double sy = jd < nys && a + (s.ys[jd] - c) <= window.x.hi ? s.ys[jd] - c : INFINITY;
                    if (sx == INFINITY && sy == INFINITY) break;
                    if (sx < sy) {
                        cb(RectCand{ia, ib++, jc, 0, 1});
                    } else if (sy < sx) {
                        cb(RectCand{ia, 0, jc, jd++, 2});
                    } else {
                        cb(RectCand{ia, ib++, jc, jd++, 0});
                    }
                }
            }
        return;
    }
    const double cap = fam.ecc_cap > 0.0 ? fam.ecc_cap * (1.0 + 1e-12) : INFINITY;
    for (std::uint32_t ia = 0; ia < nxs; ++ia)
        for (std::uint32_t ib = ia + 1; ib < nxs; ++ib) {
            const double w = s.xs[ib] - s.xs[ia];
            for (std::uint32_t jc = 0; jc < nys; ++jc) {
                const double c = s.ys[jc];
                auto first = std::lower_bound(s.ys.begin() + jc + 1, s.ys.end(), c + w / cap);
                if (first != s.ys.begin() + jc + 1) --first;  // rounding at the lower cap
                for (auto it = first; it != s.ys.end(); ++it) {
                    const double h = *it - c;
                    if (std::max(w, h) / std::min(w, h) > cap) {
                        if (h > w) break;
                        continue;
                    }
                    cb(RectCand{ia, ib, jc, static_cast<std::uint32_t>(it - s.ys.begin()), 0});
                }
            }
        }
}

std::string family_name(RectFamily fam) {
    if (fam.kind == RectFamily::Squares) return "squares";
    return fam.ecc_cap > 0.0 ? "rects<=ecc" : "rects";
}

OscillationReport make_report(const Rect& window, RectFamily fam, int level, OscMode mode) {
    OscillationReport r;
    r.family = family_name(fam);
    r.window = window.x;
    r.window_y = window.y;
    r.refinement_level = level;
    r.mode = mode;
    r.delta = fam.kind == RectFamily::Rects ? fam.ecc_cap : 0.0;
    return r;
}

bool before_rect(const Rect& x, const Rect& y) {
    if (x.x.lo != y.x.lo) return x.x.lo < y.x.lo;
    if (x.y.lo != y.y.lo) return x.y.lo < y.y.lo;
    return x.area() < y.area();
}

}  // namespace

std::vector<std::vector<double>> directional_maximal_e1(const GridFunction2D& g,
                                                        const std::vector<double>& y_rows,
                                                        const std::vector<double>& x_queries,
                                                        Interval x_window) {
    std::vector<std::vector<double>> out;
    out.reserve(y_rows.size());
    for (double y : y_rows) {
        auto prof = mhl_profile(slice_y(g, y), x_queries, x_window);
        std::vector<double> row(prof.size());
        for (std::size_t k = 0; k < prof.size(); ++k) row[k] = prof[k].value;
        out.push_back(std::move(row));
    }
    return out;
}

namespace {

struct StrongSetup {
    std::vector<double> xs, ys;
    std::size_t iq = 0, jq = 0;
};

StrongSetup strong_candidates(const GridFunction2D& h, Point2 q) {
    StrongSetup s{h.x_edges(), h.y_edges()};
    s.xs.push_back(q.x);
    s.ys.push_back(q.y);
    std::sort(s.xs.begin(), s.xs.end());
    s.xs.erase(std::unique(s.xs.begin(), s.xs.end()), s.xs.end());
    std::sort(s.ys.begin(), s.ys.end());
    s.ys.erase(std::unique(s.ys.begin(), s.ys.end()), s.ys.end());
    s.iq = static_cast<std::size_t>(std::lower_bound(s.xs.begin(), s.xs.end(), q.x) - s.xs.begin());
    s.jq = static_cast<std::size_t>(std::lower_bound(s.ys.begin(), s.ys.end(), q.y) - s.ys.begin());
    return s;
}

void check_strong_inputs(const Rect& window, Point2 q, std::optional<double> cap) {
    if (window.degenerate()) reject("strong maximal window is empty");
    if (!window.contains(q.x, q.y)) reject("query point outside the window");
    if (cap && !(*cap >= 1.0)) reject("eccentricity cap must be at least 1");
}

double cap_limit(std::optional<double> cap) { return cap ? *cap * (1.0 + 1e-12) : INFINITY; }

}  // namespace

std::vector<double> strong_maximal(const GridFunction2D& g, const std::vector<Point2>& queries,
                                   const Rect& window, std::optional<double> ecc_cap) {
    for (const auto& q : queries) check_strong_inputs(window, q, ecc_cap);
    const GridFunction2D h = abs(restrict_grid(g, window));
    // Prefix integrals of |g| at the edges.
    const std::size_t nx = h.nx(), ny = h.ny(), W = nx + 1;
    std::vector<double> P(W * (ny + 1), 0.0);
    for (std::size_t j = 0; j < ny; ++j) {
        double run = 0.0;
        const double ht = h.y_edges()[j + 1] - h.y_edges()[j];
        for (std::size_t i = 0; i < nx; ++i) {
            run += h.at(i, j) * (h.x_edges()[i + 1] - h.x_edges()[i]) * ht;
            P[(j + 1) * W + i + 1] = P[j * W + i + 1] + run;
        }
    }
    auto S = [&](const Loc& X, const Loc& Y) {
        const std::size_t k = Y.c * W + X.c;
        const double dxdy = (X.t - h.x_edges()[X.c]) * (Y.t - h.y_edges()[Y.c]);
        return P[k] + X.f * (P[k + 1] - P[k]) + Y.f * (P[k + W] - P[k]) + dxdy * h.at(X.c, Y.c);
    };

    const double cap = cap_limit(ecc_cap);
    std::vector<double> out;
    out.reserve(queries.size());
    for (const auto& q : queries) {
        auto s = strong_candidates(h, q);
        const std::size_t n = s.xs.size(), m = s.ys.size();
        std::vector<Loc> lx(n), ly(m);
        for (std::size_t i = 0; i < n; ++i) lx[i] = locate(h.x_edges(), s.xs[i]);
        for (std::size_t j = 0; j < m; ++j) ly[j] = locate(h.y_edges(), s.ys[j]);
        std::vector<double> T(n * m);  // T[j * n + i] = S(xs[i], ys[j])
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i) T[j * n + i] = S(lx[i], ly[j]);

        double best = 0.0;
        if (!ecc_cap) {
            std::vector<Vertex> left(s.iq + 1), right(n - s.iq);
            for (std::size_t jc = 0; jc <= s.jq; ++jc)
                for (std::size_t jd = std::max(s.jq, jc + 1); jd < m; ++jd) {
                    const double ht = s.ys[jd] - s.ys[jc];
                    for (std::size_t i = 0; i < n; ++i) {
                        Vertex v{s.xs[i], T[jd * n + i] - T[jc * n + i]};
                        if (i <= s.iq) left[i] = v;
                        if (i >= s.iq) right[i - s.iq] = v;
                    }
                    auto cm = max_chord_slope(left, right);
                    if (cm.found) best = std::max(best, cm.slope / ht);
                }
        } else {
            for (std::size_t jc = 0; jc <= s.jq; ++jc)
                for (std::size_t jd = std::max(s.jq, jc + 1); jd < m; ++jd) {
                    const double ht = s.ys[jd] - s.ys[jc];
                    for (std::size_t ia = 0; ia <= s.iq; ++ia)
                        for (std::size_t ib = std::max(s.iq, ia + 1); ib < n; ++ib) {
                            const double w = s.xs[ib] - s.xs[ia];
                            if (std::max(w, ht) / std::min(w, ht) > cap) continue;
                            const double I = T[jd * n + ib] - T[jd * n + ia] - T[jc * n + ib] +
                                             T[jc * n + ia];
                            best = std::max(best, I / (w * ht));
                        }
                }
        }
        out.push_back(best);
    }
    return out;
}

double strong_maximal_naive(const GridFunction2D& g, Point2 query, const Rect& window,
                            std::optional<double> ecc_cap) {
    check_strong_inputs(window, query, ecc_cap);
    const GridFunction2D h = abs(restrict_grid(g, window));
    auto s = strong_candidates(h, query);
    const std::size_t n = s.xs.size(), m = s.ys.size();
    const double cap = cap_limit(ecc_cap);
    // value of |g| on the candidate segment cell (k, l)
    auto val = [&](std::size_t k, std::size_t l) {
        return h(0.5 * (s.xs[k] + s.xs[k + 1]), 0.5 * (s.ys[l] + s.ys[l + 1]));
    };
    double best = 0.0;
    std::vector<double> col(n - 1);
    for (std::size_t jc = 0; jc <= s.jq; ++jc) {
        std::fill(col.begin(), col.end(), 0.0);
        for (std::size_t jd = jc + 1; jd < m; ++jd) {
            const double dh = s.ys[jd] - s.ys[jd - 1];
            for (std::size_t k = 0; k + 1 < n; ++k) col[k] += val(k, jd - 1) * (s.xs[k + 1] - s.xs[k]) * dh;
            if (jd < s.jq) continue;
            const double ht = s.ys[jd] - s.ys[jc];
            for (std::size_t ia = 0; ia <= s.iq; ++ia) {
                double run = 0.0;
                for (std::size_t ib = ia + 1; ib < n; ++ib) {
                    run += col[ib - 1];
                    if (ib < s.iq) continue;
                    const double w = s.xs[ib] - s.xs[ia];
                    if (std::max(w, ht) / std::min(w, ht) > cap) continue;
                    best = std::max(best, run / (w * ht));
                }
            }
        }
    }
    return best;
}

double mean_osc_2d(const GridFunction2D& g, const Rect& R, OscMode mode) {
    if (R.degenerate()) reject("mean oscillation over a degenerate rectangle");
    return exact_osc_2d(g, R, mode);
}

OscillationReport bmo_norm_2d(const GridFunction2D& g, const Rect& window, RectFamily family,
                              int refinement_level, OscMode mode) {
    if (family.kind == RectFamily::Rects && family.ecc_cap != 0.0 && !(family.ecc_cap >= 1.0))
        reject("eccentricity cap must be at least 1");
    const Setup s = make_setup(g, window, refinement_level);
    const Index2D idx(s.g);
    auto loc_of = [&](const RectCand& c) {
        const Rect R = rect_of(s, c);
        Loc a = s.lxs[c.ia], cc = s.lys[c.jc];
        Loc b = c.side_from == 2 ? idx.lx(R.x.hi) : s.lxs[c.ib];
        Loc d = c.side_from == 1 ? idx.ly(R.y.hi) : s.lys[c.jd];
        return std::array<Loc, 4>{a, b, cc, d};
    };
    auto each = [&](auto&& cb) { enumerate_family(s, window, family, cb); };
    auto bound = [&](const RectCand& c) {
        auto L = loc_of(c);
        return idx.bound(L[0], L[1], L[2], L[3]);
    };
    auto exact = [&](const RectCand& c) { return exact_osc_2d(s.g, rect_of(s, c), mode); };
    auto before = [&](const RectCand& x, const RectCand& y) {
        return before_rect(rect_of(s, x), rect_of(s, y));
    };
    auto res = detail::certified_max<RectCand>(each, bound, exact, before);
    if (!res.found) reject("empty rectangle family");
    auto r = make_report(window, family, refinement_level, mode);
    const Rect best = rect_of(s, res.best);
    r.value = res.value;
    r.argmax = best.x;
    r.argmax_y = best.y;
    r.candidates = res.scored;
    r.exact_evaluations = res.exact;
    return r;
}

OscillationReport bmo_norm_2d_exhaustive(const GridFunction2D& g, const Rect& window,
                                         RectFamily family, int refinement_level, OscMode mode) {
    const Setup s = make_setup(g, window, refinement_level);
    auto r = make_report(window, family, refinement_level, mode);
    bool found = false;
    Rect best{};
    enumerate_family(s, window, family, [&](const RectCand& c) {
        const Rect R = rect_of(s, c);
        const double v = exact_osc_2d(s.g, R, mode);
        ++r.exact_evaluations;
        if (!found || v > r.value || (v == r.value && before_rect(R, best))) {
            r.value = v;
            best = R;
            found = true;
        }
    });
    if (!found) reject("empty rectangle family");
    r.argmax = best.x;
    r.argmax_y = best.y;
    r.candidates = r.exact_evaluations;
    return r;
}

namespace {

// sup over a of (1/len) int_a^{a+len} |f|: the average is piecewise linear in
// a with kinks where a or a + len crosses a breakpoint.
double sup_fixed_avg(const StepFunction1D& f, double len, Interval w) {
    const auto g = abs(f);
    std::vector<double> starts{w.lo, w.hi - len};
    for (double b : f.breakpoints()) {
        starts.push_back(b);
        starts.push_back(b - len);
    }
    double best = 0.0;
    for (double a : starts)
        if (a >= w.lo && a + len <= w.hi) best = std::max(best, integrate(g, a, a + len) / len);
    return best;
}

double sup_fixed_osc(const StepFunction1D& f, double len, Interval w) {
    std::vector<double> starts{w.lo, w.hi - len};
    for (double b : f.breakpoints()) {
        starts.push_back(b);
        starts.push_back(b - len);
        starts.push_back(b - 0.5 * len);
    }
    const int grid = 1024;
    for (int k = 0; k <= grid; ++k) starts.push_back(w.lo + (w.length() - len) * k / grid);
    return fixed_length_osc(f, len, starts, w).value;
}

}  // namespace

SeparableNorm product_separable_norm(const StepFunction1D& phi, const StepFunction1D& psi,
                                     const std::vector<double>& delta_grid, const Rect& window) {
    if (delta_grid.empty()) reject("empty delta grid");
    if (window.degenerate()) reject("window is empty");
    SeparableNorm out;
    double prev = 0.0;
    for (double d : delta_grid) {
        if (!(d > 0.0)) reject("delta must be positive");
        if (d < prev) reject("delta grid must be sorted");
        if (d > window.x.length() || d > window.y.length()) reject("delta exceeds the window");
        prev = d;
        SeparableRow row{d, sup_fixed_avg(phi, d, window.x), sup_fixed_osc(phi, d, window.x),
                         sup_fixed_avg(psi, d, window.y), sup_fixed_osc(psi, d, window.y), 0.0};
        row.value = row.avg_phi * row.osc_psi + row.osc_phi * row.avg_psi;
        if (out.rows.empty() || row.value > out.value) {
            out.value = row.value;
            out.best_delta = d;
        }
        out.rows.push_back(row);
    }
    return out;
}

namespace {

double check_union(std::vector<Interval>& A, const char* name) {
    if (A.empty()) reject(std::string(name) + " is empty");
    std::sort(A.begin(), A.end(), [](auto& x, auto& y) { return x.lo < y.lo; });
    double m = 0.0;
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (A[i].degenerate()) reject(std::string(name) + " contains an empty interval");
        if (i > 0 && A[i].lo < A[i - 1].hi) reject(std::string(name) + " has overlapping intervals");
        m += A[i].length();
    }
    return m;
}

// Weighted slice term: sum over rows of |row cut by B| * O(row, A), divided by |B|.
double slice_term(const std::vector<double>& edges, const std::vector<Interval>& B, double mB,
                  const std::function<StepFunction1D(std::size_t)>& row, const std::vector<Interval>& A) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
        double w = 0.0;
        for (const auto& I : B) w += overlap(I, {edges[j], edges[j + 1]});
        if (w > 0.0) s += w * mean_osc(row(j), A);
    }
    return s / mB;  // rows outside the span are zero and contribute nothing
}

}  // namespace

SliceDecomposition slice_osc_decomposition(const GridFunction2D& g, const std::vector<Interval>& A,
                                           const std::vector<Interval>& B) {
    auto a = A;
    auto b = B;
    const double mA = check_union(a, "A"), mB = check_union(b, "B");
    const double area = mA * mB;
    double v0 = 0.0, s = 0.0;
    bool first = true;
    for (const auto& I : a)
        for (const auto& J : b)
            for_each_cell_piece(g, Rect{I, J}, [&](double v, double w) {
                if (first) v0 = v, first = false;
                s += (v - v0) * w;
            });
    const double m = v0 + s / area;
    double d = 0.0;
    for (const auto& I : a)
        for (const auto& J : b)
            for_each_cell_piece(g, Rect{I, J}, [&](double v, double w) { d += std::abs(v - m) * w; });

    const auto& xe = g.x_edges();
    const auto& ye = g.y_edges();
    auto row = [&](std::size_t j) {
        std::vector<double> v(g.nx());
        for (std::size_t i = 0; i < g.nx(); ++i) v[i] = g.at(i, j);
        return StepFunction1D(xe, std::move(v));
    };
    auto col = [&](std::size_t i) {
        std::vector<double> v(g.ny());
        for (std::size_t j = 0; j < g.ny(); ++j) v[j] = g.at(i, j);
        return StepFunction1D(ye, std::move(v));
    };
    return {d / area, slice_term(ye, b, mB, row, a) + slice_term(xe, a, mA, col, b)};
}

}  // namespace bmo
