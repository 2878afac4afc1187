#include "bmo/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bmo/error.hpp"

namespace bmo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxCells = 20'000'000;

std::string coord(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class Stepper {
public:
    Stepper(const Sampler1D& s, double eps) : s_(s), eps_(eps) {}

    double eval(double x) const {
        double v = s_.evaluator(x);
        if (!std::isfinite(v)) reject("non-finite profile value at x = " + coord(x));
        return v;
    }

    double average(double l, double r, bool singular) const {
        double integral;
        if (s_.antiderivative) {
            integral = s_.antiderivative(r) - s_.antiderivative(l);
        } else if (singular) {
            boost::math::quadrature::tanh_sinh<double> ts;
            integral = ts.integrate(s_.evaluator, l, r);
        } else {
            integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                s_.evaluator, l, r, 15, 1e-13);
        }
        double avg = integral / (r - l);
        if (!std::isfinite(avg))
            reject("non-finite cell average on [" + coord(l) + ", " + coord(r) + "]");
        return avg;
    }

    // Walks from `from` toward `to` (exclusive of any singular end, which the
    // caller handles), appending cells as (left, right, average) in walk order.
    void walk(double from, double to, std::vector<double>& edges, std::vector<double>& vals) {
        double cursor = from;
        while (cursor != to) {
            double v0 = eval(std::nextafter(cursor, to));
            double v_far = eval(std::nextafter(to, cursor));
            double next;
            if (std::abs(v_far - v0) <= eps_) {
                next = to;
            } else {
                double ok = cursor, bad = to;
                double span = std::abs(to - cursor);
                for (int it = 0; it < 200; ++it) {
                    double mid = ok + 0.5 * (bad - ok);
                    if (mid == ok || mid == bad) break;
                    if (std::abs(eval(mid) - v0) <= eps_) ok = mid; else bad = mid;
                    if (std::abs(bad - ok) <= 1e-7 * std::max(std::abs(ok - cursor), 1e-300) &&
                        ok != cursor)
                        break;
                    if (std::abs(bad - ok) <= 1e-15 * span) break;
                }
                // A jump inside a monotone piece collapses the bracket; step over it.
                next = (ok != cursor) ? ok : bad;
            }
            double l = std::min(cursor, next), r = std::max(cursor, next);
            double a = average(l, r, false);
            double vl = eval(std::nextafter(l, r)), vr = eval(std::nextafter(r, l));
            a = std::clamp(a, std::min(vl, vr), std::max(vl, vr));
            edges.push_back(next);
            vals.push_back(a);
            if (vals.size() > kMaxCells) reject("sampling needs more than 2e7 cells");
            cursor = next;
        }
    }

private:
    const Sampler1D& s_;
    double eps_;
};

bool is_singular(const Sampler1D& s, double x) {
    return std::find(s.singular_points.begin(), s.singular_points.end(), x) !=
           s.singular_points.end();
}

bool covered(const Sampler1D& s, double x) {
    if (s.monotone_pieces.empty()) return true;
    for (const auto& p : s.monotone_pieces)
        if (p.lo <= x && x <= p.hi) return true;
    return false;
}

}  // namespace

StepFunction1D sample_to_step(const Sampler1D& s, Interval window, double max_cell_error) {
    if (window.degenerate()) reject("sampling window is empty");
    if (!(max_cell_error > 0.0)) reject("max_cell_error must be positive");
    if (!s.evaluator) reject("sampler has no evaluator");

    std::vector<double> cuts{window.lo, window.hi};
    for (const auto& p : s.monotone_pieces)
        for (double e : {p.lo, p.hi})
            if (e > window.lo && e < window.hi) cuts.push_back(e);
    for (double e : s.singular_points)
        if (e > window.lo && e < window.hi) cuts.push_back(e);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Stepper stepper(s, max_cell_error);
    std::vector<double> bp{window.lo};
    std::vector<double> vals;

    auto sample_segment = [&](double l, double r) {
        bool sl = is_singular(s, l), sr = is_singular(s, r);
        double floor = s.singular_floor;
        if ((sl || sr) && r - l <= (sl && sr ? 2.0 : 1.0) * floor) {
            bp.push_back(r);
            vals.push_back(stepper.average(l, r, true));
            return;
        }
        if (sl && sr) reject("segment [" + coord(l) + ", " + coord(r) + "] is singular at both ends");
        if (sl) {
            // Walk leftward from the regular end, then close the gap at l.
            std::vector<double> edges, v;
            double stop = l + floor;
            stepper.walk(r, stop, edges, v);
            bp.push_back(stop);
            vals.push_back(stepper.average(l, stop, true));
            // Walk order visits r > edges[0] > edges[1] > ... > stop.
            for (std::size_t i = v.size(); i-- > 0;) {
                bp.push_back(i == 0 ? r : edges[i - 1]);
                vals.push_back(v[i]);
            }
            return;
        }
        double stop = sr ? r - floor : r;
        std::vector<double> edges, v;
        stepper.walk(l, stop, edges, v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            bp.push_back(edges[i]);
            vals.push_back(v[i]);
        }
        if (sr) {
            bp.push_back(r);
            vals.push_back(stepper.average(stop, r, true));
        }
    };

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double l = cuts[i], r = cuts[i + 1];
        if (!covered(s, 0.5 * (l + r)))
            reject("window point " + coord(0.5 * (l + r)) + " lies outside every monotone piece");
        if (is_singular(s, l) && is_singular(s, r)) {
            double m = 0.5 * (l + r);
            sample_segment(l, m);
            sample_segment(m, r);
        } else {
            sample_segment(l, r);
        }
    }
    return StepFunction1D(std::move(bp), std::move(vals));
}

double log_minus_pow(double x, double p) {
    double a = std::abs(x);
    if (a >= 1.0) return 0.0;
    if (a == 0.0) return kInf;
    return std::pow(-std::log(a), p);
}

double log_minus_pow_integral(double x, double p) {
    double a = std::abs(x);
    double v;
    if (a == 0.0) {
        v = 0.0;
    } else if (a >= 1.0) {
        v = boost::math::tgamma(p + 1.0);
    } else {
        v = boost::math::tgamma(p + 1.0, -std::log(a));
    }
    return x < 0 ? -v : v;
}

double clamp_core_radius(double p, double w, double M) {
    if (!(w > 0.0)) return 0.0;
    return std::exp(-std::pow(M / w, 1.0 / p));
}

double clamped_bump_integral(double x, double p, double w, double M) {
    double a = std::min(std::abs(x), 1.0);
    double r = clamp_core_radius(p, w, M);
    double v;
    if (a <= r) {
        v = M * a;
    } else {
        v = M * r + w * (log_minus_pow_integral(a, p) - log_minus_pow_integral(r, p));
    }
    return x < 0 ? -v : v;
}

namespace profiles {

Sampler1D constant(double value) {
    Sampler1D s;
    s.evaluator = [value](double) { return value; };
    s.antiderivative = [value](double x) { return value * x; };
    return s;
}

Sampler1D identity() {
    Sampler1D s;
    s.evaluator = [](double x) { return x; };
    s.antiderivative = [](double x) { return 0.5 * x * x; };
    return s;
}

Sampler1D indicator(Interval support, double height) {
    Sampler1D s;
    s.evaluator = [=](double x) { return (x >= support.lo && x < support.hi) ? height : 0.0; };
    s.antiderivative = [=](double x) {
        return height * (std::clamp(x, support.lo, support.hi) - support.lo);
    };
    s.monotone_pieces = {{-kInf, support.lo}, support, {support.hi, kInf}};
    return s;
}

Sampler1D heaviside() {
    Sampler1D s;
    s.evaluator = [](double x) { return x >= 0.0 ? 1.0 : 0.0; };
    s.antiderivative = [](double x) { return std::max(x, 0.0); };
    s.monotone_pieces = {{-kInf, 0.0}, {0.0, kInf}};
    return s;
}

Sampler1D log_plus() {
    Sampler1D s;
    s.evaluator = [](double x) { return std::max(0.0, std::log(std::abs(x))); };
    s.antiderivative = [](double x) {
        double a = std::abs(x);
        double v = a <= 1.0 ? 0.0 : a * std::log(a) - a + 1.0;
        return x < 0 ? -v : v;
    };
    s.monotone_pieces = {{-kInf, -1.0}, {-1.0, 0.0}, {0.0, 1.0}, {1.0, kInf}};
    return s;
}

Sampler1D log_abs() {
    Sampler1D s;
    s.evaluator = [](double x) { return std::log(std::abs(x)); };
    s.antiderivative = [](double x) {
        if (x == 0.0) return 0.0;
        return x * std::log(std::abs(x)) - x;
    };
    s.monotone_pieces = {{-kInf, 0.0}, {0.0, kInf}};
    s.singular_points = {0.0};
    return s;
}

Sampler1D log_minus_pow(double p) {
    if (!(p > 0.0)) reject("exponent p must be positive");
    Sampler1D s;
    s.evaluator = [p](double x) { return bmo::log_minus_pow(x, p); };
    s.antiderivative = [p](double x) { return log_minus_pow_integral(x, p); };
    s.monotone_pieces = {{-kInf, -1.0}, {-1.0, 0.0}, {0.0, 1.0}, {1.0, kInf}};
    s.singular_points = {0.0};
    return s;
}

Sampler1D clamped_bump(double p, double w, double M) {
    if (!(p > 0.0)) reject("exponent p must be positive");
    if (!(w >= 0.0) || !std::isfinite(w)) reject("bump weight must be finite and nonnegative");
    if (!(M > 0.0)) reject("clamp height must be positive");
    Sampler1D s;
    s.evaluator = [=](double x) {
        if (x == 0.0) return w > 0.0 ? M : 0.0;
        return std::min(w * bmo::log_minus_pow(x, p), M);
    };
    s.antiderivative = [=](double x) { return clamped_bump_integral(x, p, w, M); };
    s.monotone_pieces = {{-kInf, -1.0}, {-1.0, 0.0}, {0.0, 1.0}, {1.0, kInf}};
    return s;
}

}  // namespace profiles

}  // namespace bmo
