#include "bmo/bumpsum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bmo/chord.hpp"
#include "bmo/error.hpp"
#include "bmo/sampler.hpp"

namespace bmo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_count(double c) { return c >= 1.0 && std::isfinite(c) && std::floor(c) == c; }

// One bump row of weight w (possibly +inf when clamped), local coordinate t.
struct Row {
    double p;
    double w;
    double M;  // +inf when unclamped

    double density(double t) const {
        const double f = log_minus_pow(t, p);
        if (f == 0.0) return 0.0;
        return std::min(w * f, M);
    }
    // int_0^t density, odd in t.
    double half_mass(double t) const {
        if (M == kInf) return w * log_minus_pow_integral(t, p);
        return clamped_bump_integral(t, p, w, M);
    }
    double mass() const { return 2.0 * half_mass(1.0); }
};

Row make_row(const BumpSum2D& g, double dy) {
    const double w = log_minus_pow(dy, g.q());
    const double M = g.clamp() ? *g.clamp() : kInf;
    if (w == kInf && M == kInf) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "row at height offset %.17g hits an unclamped singularity", dy);
        reject(buf);
    }
    return {g.p(), w, M};
}

// Index range [lo, hi] of centers in run r whose x lies in [a, b].
bool index_range(const BumpRun& r, double a, double b, double& lo, double& hi) {
    if (r.count == 1.0) {
        if (r.x0 < a || r.x0 > b) return false;
        lo = hi = 0.0;
        return true;
    }
    lo = std::max(0.0, std::ceil((a - r.x0) / r.dx));
    hi = std::min(r.count - 1.0, std::floor((b - r.x0) / r.dx));
    return lo <= hi;
}

std::vector<BumpRun> sorted_runs(const BumpSum2D& g) {
    auto runs = g.runs();
    std::stable_sort(runs.begin(), runs.end(), [](auto& a, auto& b) { return a.x0 < b.x0; });
    return runs;
}

}  // namespace

BumpSum2D::BumpSum2D(double p, double q, std::vector<BumpRun> runs, std::optional<double> clamp)
    : p_(p), q_(q), runs_(std::move(runs)), clamp_(clamp) {
    if (!(p > 0.0) || !(q > 0.0)) reject("bump exponents p and q must be positive");
    if (p + q > 1.0 + 1e-12) reject("bump exponents need p + q <= 1");
    if (clamp_ && !(*clamp_ > 0.0 && std::isfinite(*clamp_))) reject("clamp height must be positive");
    for (const auto& r : runs_) {
        if (!std::isfinite(r.x0) || !std::isfinite(r.y)) reject("bump center is not finite");
        if (!is_count(r.count)) reject("bump run count must be a positive integer");
        if (r.count > 1.0 && !(r.dx > 0.0 && std::isfinite(r.dx)))
            reject("bump run spacing must be positive");
    }
    auto s = sorted_runs(*this);
    const double need = kBumpSpacing * (1.0 - 1e-12);
    certified_ = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].count > 1.0 && s[i].dx < need) certified_ = false;
        if (i == 0) continue;
        const auto& prev = s[i - 1];
        // Gap measured in steps of prev.dx so that counts beyond 2^53 do not
        // round the last center onto the next run.
        const double gap = prev.count == 1.0
                               ? s[i].x0 - prev.x0
                               : ((s[i].x0 - prev.x0) / prev.dx - prev.count + 1.0) * prev.dx;
        if (gap < need) certified_ = false;
    }
}

BumpSum2D BumpSum2D::from_centers(double p, double q, const std::vector<Point2>& centers,
                                  std::optional<double> clamp) {
    std::vector<BumpRun> runs;
    runs.reserve(centers.size());
    for (const auto& c : centers) runs.push_back({c.x, 0.0, 1.0, c.y});
    return BumpSum2D(p, q, std::move(runs), clamp);
}

double BumpSum2D::center_count() const {
    double n = 0.0;
    for (const auto& r : runs_) n += r.count;
    return n;
}

double BumpSum2D::support_left() const {
    double x = kInf;
    for (const auto& r : runs_) x = std::min(x, r.x0 - 1.0);
    return x;
}

BumpSum2D BumpSum2D::with_clamp(std::optional<double> clamp) const {
    return BumpSum2D(p_, q_, runs_, clamp);
}

double BumpSum2D::operator()(double x, double y) const {
    double sum = 0.0;
    for (const auto& r : runs_) {
        if (!(std::abs(y - r.y) < 1.0)) continue;
        double lo, hi;
        if (!index_range(r, x - 1.0, x + 1.0, lo, hi)) continue;
        const double w = log_minus_pow(y - r.y, q_);
        for (double i = lo; i <= hi; i += 1.0) {
            const double t = x - (r.x0 + i * r.dx);
            if (std::abs(t) < 1.0) sum += w * log_minus_pow(t, p_);
        }
    }
    return clamp_ ? std::min(sum, *clamp_) : sum;
}

double evaluate_naive(const BumpSum2D& g, double x, double y) {
    if (g.center_count() > 1e7) reject("too many centers for naive evaluation");
    double sum = 0.0;
    for (const auto& r : g.runs())
        for (double i = 0.0; i < r.count; i += 1.0) {
            const double cx = r.x0 + i * r.dx;
            const double t = x - cx, u = y - r.y;
            if (std::abs(t) < 1.0 && std::abs(u) < 1.0)
                sum += log_minus_pow(t, g.p()) * log_minus_pow(u, g.q());
        }
    return g.clamp() ? std::min(sum, *g.clamp()) : sum;
}

namespace {

// Clamp excess of one bump over [0, a] x [0, b], a, b in [0, 1]: the integral of
// (phi(s) psi(u) - M)_+. For fixed s the excess lives on u < r(s), and r(s) >= b
// exactly when s <= s*(b).
double quadrant_excess(double p, double q, double M, double a, double b) {
    if (a <= 0.0 || b <= 0.0) return 0.0;
    const double psi_b = log_minus_pow(b, q);
    const double sigma = std::min(a, clamp_core_radius(p, psi_b, M));
    double v = 0.0;
    if (sigma > 0.0) v += log_minus_pow_integral(b, q) * log_minus_pow_integral(sigma, p) - M * b * sigma;
    if (sigma < a) {
        auto e = [&](double s) {
            const double f = log_minus_pow(s, p);
            const double r = clamp_core_radius(q, f, M);
            if (r == 0.0) return 0.0;
            return std::max(0.0, f * log_minus_pow_integral(r, q) - M * r);
        };
        boost::math::quadrature::tanh_sinh<double> ts;
        v += ts.integrate(e, sigma, a, 1e-14);
    }
    return v;
}

double signed_excess(double p, double q, double M, double s, double u) {
    const double v = quadrant_excess(p, q, M, std::min(std::abs(s), 1.0), std::min(std::abs(u), 1.0));
    return (s < 0.0) != (u < 0.0) ? -v : v;
}

}  // namespace

double bump_rect_integral(double p, double q, std::optional<double> clamp, double s0, double s1,
                          double u0, double u1) {
    s0 = std::max(s0, -1.0);
    s1 = std::min(s1, 1.0);
    u0 = std::max(u0, -1.0);
    u1 = std::min(u1, 1.0);
    if (!(s0 < s1) || !(u0 < u1)) return 0.0;
    const double base = (log_minus_pow_integral(s1, p) - log_minus_pow_integral(s0, p)) *
                        (log_minus_pow_integral(u1, q) - log_minus_pow_integral(u0, q));
    if (!clamp) return base;
    const double M = *clamp;
    // The set where phi psi exceeds M hugs both axes; rectangles that avoid it
    // lose nothing to the clamp.
    const double s_near = (s0 <= 0.0 && s1 >= 0.0) ? 0.0 : std::min(std::abs(s0), std::abs(s1));
    const double u_near = (u0 <= 0.0 && u1 >= 0.0) ? 0.0 : std::min(std::abs(u0), std::abs(u1));
    if (s_near > 0.0 && u_near >= clamp_core_radius(q, log_minus_pow(s_near, p), M)) return base;
    if (u_near > 0.0 && s_near >= clamp_core_radius(p, log_minus_pow(u_near, q), M)) return base;
    const double excess = signed_excess(p, q, M, s1, u1) - signed_excess(p, q, M, s0, u1) -
                          signed_excess(p, q, M, s1, u0) + signed_excess(p, q, M, s0, u0);
    return base - excess;
}

GridFunction2D rasterize(const BumpSum2D& g, const Rect& window, std::size_t nx, std::size_t ny) {
    if (window.degenerate()) reject("raster window is empty");
    if (nx == 0 || ny == 0) reject("raster needs at least one cell per axis");
    if (g.clamp() && !g.spacing_certified())
        reject("clamped rasterization needs certified spacing (one term per point)");
    std::vector<double> xe(nx + 1), ye(ny + 1);
    for (std::size_t i = 0; i <= nx; ++i)
        xe[i] = i == nx ? window.x.hi : window.x.lo + window.x.length() * static_cast<double>(i) / nx;
    for (std::size_t j = 0; j <= ny; ++j)
        ye[j] = j == ny ? window.y.hi : window.y.lo + window.y.length() * static_cast<double>(j) / ny;
    std::vector<double> v(nx * ny, 0.0);
    double visited = 0.0;
    auto first_cell = [](const std::vector<double>& e, double t) {
        if (t <= e.front()) return std::size_t{0};
        return static_cast<std::size_t>(std::upper_bound(e.begin(), e.end(), t) - e.begin()) - 1;
    };
    for (const auto& r : g.runs()) {
        if (r.y + 1.0 <= window.y.lo || r.y - 1.0 >= window.y.hi) continue;
        double lo, hi;
        if (!index_range(r, window.x.lo - 1.0, window.x.hi + 1.0, lo, hi)) continue;
        visited += hi - lo + 1.0;
        if (visited > 1e6) reject("too many bumps inside the raster window");
        for (double k = lo; k <= hi; k += 1.0) {
            const double cx = r.x0 + k * r.dx;
            const std::size_t i0 = first_cell(xe, cx - 1.0), j0 = first_cell(ye, r.y - 1.0);
            for (std::size_t j = j0; j < ny && ye[j] < r.y + 1.0; ++j)
                for (std::size_t i = i0; i < nx && xe[i] < cx + 1.0; ++i) {
                    const double I = bump_rect_integral(g.p(), g.q(), g.clamp(), xe[i] - cx,
                                                        xe[i + 1] - cx, ye[j] - r.y, ye[j + 1] - r.y);
                    v[j * nx + i] += I / ((xe[i + 1] - xe[i]) * (ye[j + 1] - ye[j]));
                }
        }
    }
    return GridFunction2D(std::move(xe), std::move(ye), std::move(v));
}

StepFunction1D slice_y(const BumpSum2D& g, double y, Interval x_window, double max_cell_error) {
    if (x_window.degenerate()) reject("slice window is empty");
    struct Piece {
        double c;
        StepFunction1D f;
    };
    std::vector<Piece> pieces;
    double visited = 0.0;
    for (const auto& r : g.runs()) {
        if (!(std::abs(y - r.y) < 1.0)) continue;
        const Row row = make_row(g, y - r.y);
        double lo, hi;
        if (!index_range(r, x_window.lo - 1.0, x_window.hi + 1.0, lo, hi)) continue;
        visited += hi - lo + 1.0;
        if (visited > 1e6) reject("too many bumps inside the slice window");
        for (double k = lo; k <= hi; k += 1.0) {
            const double c = r.x0 + k * r.dx;
            Interval span{std::max(c - 1.0, x_window.lo), std::min(c + 1.0, x_window.hi)};
            if (span.degenerate()) continue;
            Sampler1D s;
            s.evaluator = [row, c](double x) { return row.density(x - c); };
            s.antiderivative = [row, c](double x) { return row.half_mass(x - c); };
            s.monotone_pieces = {{-kInf, c - 1.0}, {c - 1.0, c}, {c, c + 1.0}, {c + 1.0, kInf}};
            if (row.M == kInf) s.singular_points = {c};
            pieces.push_back({c, sample_to_step(s, span, max_cell_error)});
        }
    }
    std::sort(pieces.begin(), pieces.end(), [](auto& a, auto& b) { return a.c < b.c; });
    std::vector<double> bp{x_window.lo}, vals;
    bool disjoint = true;
    for (const auto& pc : pieces) {
        const auto& b = pc.f.breakpoints();
        if (b.front() < bp.back()) {
            disjoint = false;
            break;
        }
        if (b.front() > bp.back()) {
            vals.push_back(0.0);
            bp.push_back(b.front());
        }
        bp.insert(bp.end(), b.begin() + 1, b.end());
        vals.insert(vals.end(), pc.f.values().begin(), pc.f.values().end());
    }
    if (!disjoint) {
        auto sum = StepFunction1D::zero(x_window);
        for (const auto& pc : pieces) sum = add(sum, pc.f);
        if (g.clamp()) sum = clamp(sum, *g.clamp());
        return sum.restricted(x_window);
    }
    if (bp.back() < x_window.hi) {
        vals.push_back(0.0);
        bp.push_back(x_window.hi);
    }
    return StepFunction1D(std::move(bp), std::move(vals));
}

namespace {

void check_left_queries(const BumpSum2D& g, const std::vector<double>& xs) {
    if (!g.spacing_certified()) reject("structured maximal operators need certified spacing");
    const double edge = g.support_left();
    for (double x : xs) {
        if (!(x <= edge)) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "query x = %.17g is not left of the support (edge %.17g)", x, edge);
            reject(buf);
        }
    }
}

// sup over b > x of F(b) / (b - x) for one row, F = int_x^b of the row.
double row_maximal(const std::vector<BumpRun>& runs, const std::vector<Row>& rows, double x) {
    double best = 0.0, P = 0.0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& r = runs[k];
        const Row& row = rows[k];
        if (row.w == 0.0) continue;
        const double m = row.mass();
        const double half = 0.5 * m;
        for (double j : {0.0, r.count - 1.0}) {
            if (j > 0.0 && r.count == 1.0) break;
            const double S = P + j * m;
            const double B = (r.x0 + j * r.dx) - x;
            if (B - 1.0 > 0.0 && (S + m) / (B - 1.0) <= best) continue;
            auto ratio = [&](double t) { return (S + half + row.half_mass(t)) / (B + t); };
            best = std::max({best, ratio(0.0), ratio(1.0)});
            // On (0, 1) the density decreases, so the ratio has a single
            // interior maximum where density * (B + t) equals the mass so far.
            auto h = [&](double t) { return row.density(t) * (B + t) - (S + half + row.half_mass(t)); };
            double lo = 0.0, hi = 1.0;
            if (h(std::nextafter(0.0, 1.0)) <= 0.0) continue;
            for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                (h(mid) > 0.0 ? lo : hi) = mid;
            }
            best = std::max({best, ratio(lo), ratio(hi)});
        }
        P += r.count * m;
    }
    return best;
}

}  // namespace

std::vector<std::vector<double>> directional_maximal_e1(const BumpSum2D& g,
                                                        const std::vector<double>& y_rows,
                                                        const std::vector<double>& x_queries) {
    check_left_queries(g, x_queries);
    const auto runs = sorted_runs(g);
    std::vector<std::vector<double>> out;
    out.reserve(y_rows.size());
    for (double y : y_rows) {
        std::vector<Row> rows;
        rows.reserve(runs.size());
        for (const auto& r : runs)
            rows.push_back(std::abs(y - r.y) < 1.0 ? make_row(g, y - r.y) : Row{g.p(), 0.0, kInf});
        std::vector<double> vals;
        vals.reserve(x_queries.size());
        for (double x : x_queries) vals.push_back(row_maximal(runs, rows, x));
        out.push_back(std::move(vals));
    }
    return out;
}

namespace {

// Clamp excess of a whole bump row at height offset s, integrated from 0:
// X(s) = int_0^s [beta psi(t) - mass of the clamped row at t] dt, odd and
// nondecreasing in s. Tabulated at nodes; lookups return the bracketing
// values so that callers get rigorous one-sided bounds.
class ExcessTable {
public:
    ExcessTable(double p, double q, std::optional<double> clamp) {
        nodes_.push_back(0.0);
        for (int j = 60; j >= 11; --j) nodes_.push_back(std::ldexp(1.0, -j));
        for (int k = 1; k <= 1024; ++k) nodes_.push_back(k / 1024.0);
        X_.assign(nodes_.size(), 0.0);
        if (!clamp) return;
        const double M = *clamp;
        const double beta = 2.0 * boost::math::tgamma(p + 1.0);
        auto chi = [&](double t) {
            const double w = log_minus_pow(t, q);
            if (w == 0.0) return 0.0;
            return std::max(0.0, beta * w - 2.0 * clamped_bump_integral(1.0, p, w, M));
        };
        boost::math::quadrature::tanh_sinh<double> ts;
        for (std::size_t k = 1; k < nodes_.size(); ++k)
            X_[k] = X_[k - 1] + ts.integrate(chi, nodes_[k - 1], nodes_[k], 1e-13);
    }

    // Bracketing values of X at s.
    std::pair<double, double> at(double s) const {
        const double a = std::min(std::abs(s), 1.0);
        auto it = std::lower_bound(nodes_.begin(), nodes_.end(), a);
        const std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
        const std::size_t lo = nodes_[hi] == a ? hi : hi - 1;
        if (s >= 0.0) return {X_[lo], X_[hi]};
        return {-X_[hi], -X_[lo]};
    }

private:
    std::vector<double> nodes_, X_;
};

}  // namespace

std::vector<std::vector<double>> strong_maximal_lower(const BumpSum2D& g,
                                                      const std::vector<double>& y_rows,
                                                      const std::vector<double>& x_queries) {
    auto out = directional_maximal_e1(g, y_rows, x_queries);  // thin-rectangle limit
    if (y_rows.empty() || x_queries.empty() || g.runs().empty()) return out;
    const auto runs = sorted_runs(g);
    const std::size_t R = runs.size();
    const double beta = 2.0 * boost::math::tgamma(g.p() + 1.0);
    const ExcessTable X(g.p(), g.q(), g.clamp());

    // Height lattice: uniform grid over the rows' support and the queries,
    // refined geometrically around each row, plus the queries themselves.
    double ylo = *std::min_element(y_rows.begin(), y_rows.end());
    double yhi = *std::max_element(y_rows.begin(), y_rows.end());
    for (const auto& r : runs) ylo = std::min(ylo, r.y - 1.0), yhi = std::max(yhi, r.y + 1.0);
    std::vector<double> Y;
    const int L = 4096;
    for (int k = 0; k <= L; ++k) Y.push_back(ylo + (yhi - ylo) * k / L);
    for (const auto& r : runs) {
        Y.push_back(r.y);
        for (int j = 3; j <= 30; j += 3) {
            Y.push_back(r.y - std::ldexp(1.0, -j));
            Y.push_back(r.y + std::ldexp(1.0, -j));
        }
    }
    Y.insert(Y.end(), y_rows.begin(), y_rows.end());
    std::sort(Y.begin(), Y.end());
    Y.erase(std::unique(Y.begin(), Y.end()), Y.end());
    const std::size_t V = Y.size();

    // TL/TR[v * R + r]: lower/upper-side antiderivative of row r's mass at Y[v].
    std::vector<double> TL(V * R), TR(V * R);
    for (std::size_t v = 0; v < V; ++v)
        for (std::size_t r = 0; r < R; ++r) {
            const double s = Y[v] - runs[r].y;
            const double base = beta * log_minus_pow_integral(s, g.q());
            auto [xl, xh] = X.at(s);
            TL[v * R + r] = base - xl;  // used at left ends
            TR[v * R + r] = base - xh;  // used at right ends
        }

    std::vector<std::size_t> split(y_rows.size());
    for (std::size_t i = 0; i < y_rows.size(); ++i)
        split[i] = static_cast<std::size_t>(std::lower_bound(Y.begin(), Y.end(), y_rows[i]) - Y.begin());

    std::vector<double> cumL(V, 0.0), cumR(V, 0.0);
    std::vector<Vertex> left, right;
    for (std::size_t r0 = 0; r0 < R; ++r0) {
        const auto& run = runs[r0];
        for (double j : {0.0, run.count - 1.0}) {
            if (j > 0.0 && run.count == 1.0) break;
            const double b = run.x0 + j * run.dx + 1.0;
            std::vector<double> KL(V), KR(V);
            for (std::size_t v = 0; v < V; ++v) {
                KL[v] = cumL[v] + (j + 1.0) * TL[v * R + r0];
                KR[v] = cumR[v] + (j + 1.0) * TR[v * R + r0];
            }
            for (std::size_t i = 0; i < y_rows.size(); ++i) {
                const std::size_t sp = split[i];
                left.clear();
                right.clear();
                for (std::size_t v = 0; v <= sp; ++v) left.push_back({Y[v], KL[v]});
                for (std::size_t v = sp; v < V; ++v) right.push_back({Y[v], KR[v]});
                const auto cm = max_chord_slope(left, right);
                if (!cm.found || !(cm.slope > 0.0)) continue;
                for (std::size_t k = 0; k < x_queries.size(); ++k)
                    out[i][k] = std::max(out[i][k], cm.slope / (b - x_queries[k]));
            }
        }
        for (std::size_t v = 0; v < V; ++v) {
            cumL[v] += run.count * TL[v * R + r0];
            cumR[v] += run.count * TR[v * R + r0];
        }
    }
    return out;
}

void write_text(std::ostream& out, const BumpSum2D& g) {
    char buf[160];
    out << "bumpsum v1 ";
    std::snprintf(buf, sizeof buf, "p=%.17g q=%.17g clamp=", g.p(), g.q());
    out << buf;
    if (g.clamp()) {
        std::snprintf(buf, sizeof buf, "%.17g", *g.clamp());
        out << buf << '\n';
    } else {
        out << "none\n";
    }
    for (const auto& r : g.runs()) {
        if (r.count == 1.0) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", r.x0, r.y);
        } else {
            std::snprintf(buf, sizeof buf, "run %.17g %.17g %.17g %.17g\n", r.x0, r.dx, r.count, r.y);
        }
        out << buf;
    }
}

BumpSum2D read_bumpsum_text(std::istream& in) {
    std::string magic, version, sp, sq, sc;
    if (!(in >> magic >> version >> sp >> sq >> sc) || magic != "bumpsum" || version != "v1" ||
        sp.rfind("p=", 0) != 0 || sq.rfind("q=", 0) != 0 || sc.rfind("clamp=", 0) != 0)
        reject("expected header 'bumpsum v1 p=<> q=<> clamp=<>'");
    double p = 0.0, q = 0.0;
    std::optional<double> clamp;
    try {
        p = std::stod(sp.substr(2));
        q = std::stod(sq.substr(2));
        if (sc.substr(6) != "none") clamp = std::stod(sc.substr(6));
    } catch (const std::exception&) {
        reject("bad number in bump-sum header");
    }
    std::vector<BumpRun> runs;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        BumpRun r;
        if (line.rfind("run", 0) == 0) {
            std::string tag;
            if (!(ls >> tag >> r.x0 >> r.dx >> r.count >> r.y)) reject("bad run line: " + line);
        } else if (!(ls >> r.x0 >> r.y)) {
            reject("bad center line: " + line);
        }
        runs.push_back(r);
    }
    return BumpSum2D(p, q, std::move(runs), clamp);
}

std::string to_text(const BumpSum2D& g) {
    std::ostringstream out;
    write_text(out, g);
    return out.str();
}

BumpSum2D bumpsum_from_text(const std::string& text) {
    std::istringstream in(text);
    return read_bumpsum_text(in);
}

}  // namespace bmo
