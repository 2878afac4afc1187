#include "bmo/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "bmo/error.hpp"

namespace bmo {

namespace {

struct Canonical {
    std::vector<double> breakpoints;
    std::vector<double> values;
};

// Merge neighbours whose values agree within `tol` (relative) and trim zero
// cells from both ends. An all-zero function canonicalises to empty vectors.
Canonical canonicalise(const StepFunction1D& f, double tol) {
    const auto& bp = f.breakpoints();
    const auto& v = f.values();
    auto same = [tol](double a, double b) {
        if (tol == 0.0) return a == b;
        return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
    };
    auto is_zero = [&](double a) { return same(a, 0.0); };

    std::size_t first = 0, last = v.size();
    while (first < last && is_zero(v[first])) ++first;
    while (last > first && is_zero(v[last - 1])) --last;

    Canonical out;
    if (first == last) return out;
    out.breakpoints.push_back(bp[first]);
    for (std::size_t i = first; i < last; ++i) {
        if (!out.values.empty() && same(out.values.back(), v[i])) {
            out.breakpoints.back() = bp[i + 1];
        } else {
            out.values.push_back(v[i]);
            out.breakpoints.push_back(bp[i + 1]);
        }
    }
    return out;
}

struct Refinement {
    std::vector<double> breakpoints;
    std::vector<double> f;
    std::vector<double> g;
};

// Values of f sampled on the cells of a finer breakpoint list that contains all
// of f's breakpoints lying inside it.
std::vector<double> values_on(const StepFunction1D& f, const std::vector<double>& fine) {
    const auto& bp = f.breakpoints();
    const auto& v = f.values();
    std::vector<double> out(fine.size() - 1, 0.0);
    std::size_t i = 0;
    for (std::size_t k = 0; k + 1 < fine.size(); ++k) {
        double left = fine[k];
        if (left < bp.front() || left >= bp.back()) continue;
        while (bp[i + 1] <= left) ++i;
        out[k] = v[i];
    }
    return out;
}

Refinement refine(const StepFunction1D& f, const StepFunction1D& g) {
    Refinement r;
    const auto& a = f.breakpoints();
    const auto& b = g.breakpoints();
    r.breakpoints.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.breakpoints));
    r.breakpoints.erase(std::unique(r.breakpoints.begin(), r.breakpoints.end()),
                        r.breakpoints.end());
    r.f = values_on(f, r.breakpoints);
    r.g = values_on(g, r.breakpoints);
    return r;
}

}  // namespace

StepFunction1D::StepFunction1D(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (values_.empty()) reject("step function needs at least one cell");
    if (breakpoints_.size() != values_.size() + 1)
        reject("step function needs exactly one more breakpoint than values");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i])) reject("non-finite breakpoint");
        if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "breakpoints not strictly increasing at index %zu (%.17g)",
                          i, breakpoints_[i]);
            reject(buf);
        }
    }
    for (double v : values_)
        if (!std::isfinite(v)) reject("non-finite cell value");
}

StepFunction1D StepFunction1D::constant(double value, Interval span) {
    return StepFunction1D({span.lo, span.hi}, {value});
}

StepFunction1D StepFunction1D::indicator(Interval support, double height) {
    return StepFunction1D({support.lo, support.hi}, {height});
}

StepFunction1D StepFunction1D::zero(Interval span) { return constant(0.0, span); }

std::size_t StepFunction1D::locate(double x) const {
    if (x < breakpoints_.front() || x >= breakpoints_.back()) return npos;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

double StepFunction1D::operator()(double x) const {
    auto i = locate(x);
    return i == npos ? 0.0 : values_[i];
}

StepFunction1D StepFunction1D::merged() const {
    std::vector<double> bp{breakpoints_.front()};
    std::vector<double> v;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!v.empty() && v.back() == values_[i]) {
            bp.back() = breakpoints_[i + 1];
        } else {
            v.push_back(values_[i]);
            bp.push_back(breakpoints_[i + 1]);
        }
    }
    return StepFunction1D(std::move(bp), std::move(v));
}

StepFunction1D StepFunction1D::restricted(Interval window) const {
    if (window.degenerate()) reject("restriction window is empty");
    std::vector<double> bp{window.lo};
    for (double x : breakpoints_)
        if (x > window.lo && x < window.hi) bp.push_back(x);
    bp.push_back(window.hi);
    auto v = values_on(*this, bp);
    return StepFunction1D(std::move(bp), std::move(v));
}

bool operator==(const StepFunction1D& a, const StepFunction1D& b) {
    auto ca = canonicalise(a, 0.0);
    auto cb = canonicalise(b, 0.0);
    return ca.breakpoints == cb.breakpoints && ca.values == cb.values;
}

bool approx_equal(const StepFunction1D& a, const StepFunction1D& b, double rel_tol) {
    auto ca = canonicalise(a, rel_tol);
    auto cb = canonicalise(b, rel_tol);
    if (ca.values.size() != cb.values.size()) return false;
    auto close = [rel_tol](double x, double y) {
        return std::abs(x - y) <= rel_tol * std::max({1.0, std::abs(x), std::abs(y)});
    };
    for (std::size_t i = 0; i < ca.values.size(); ++i)
        if (!close(ca.values[i], cb.values[i])) return false;
    for (std::size_t i = 0; i < ca.breakpoints.size(); ++i)
        if (!close(ca.breakpoints[i], cb.breakpoints[i])) return false;
    return true;
}

StepFunction1D add(const StepFunction1D& f, const StepFunction1D& g) {
    auto r = refine(f, g);
    for (std::size_t k = 0; k < r.f.size(); ++k) r.f[k] += r.g[k];
    return StepFunction1D(std::move(r.breakpoints), std::move(r.f));
}

StepFunction1D subtract(const StepFunction1D& f, const StepFunction1D& g) {
    auto r = refine(f, g);
    for (std::size_t k = 0; k < r.f.size(); ++k) r.f[k] -= r.g[k];
    return StepFunction1D(std::move(r.breakpoints), std::move(r.f));
}

StepFunction1D scale(const StepFunction1D& f, double alpha) {
    if (!std::isfinite(alpha)) reject("non-finite scale factor");
    auto v = f.values();
    for (double& x : v) x *= alpha;
    return StepFunction1D(f.breakpoints(), std::move(v));
}

StepFunction1D abs(const StepFunction1D& f) {
    auto v = f.values();
    for (double& x : v) x = std::abs(x);
    return StepFunction1D(f.breakpoints(), std::move(v));
}

StepFunction1D clamp(const StepFunction1D& f, double height) {
    if (!(height > 0.0)) reject("clamp height must be positive");
    auto v = f.values();
    for (double& x : v) x = std::max(-height, std::min(x, height));
    return StepFunction1D(f.breakpoints(), std::move(v));
}

StepFunction1D mask_zero(const StepFunction1D& f, Interval where) {
    if (where.degenerate()) reject("mask interval is empty");
    std::vector<double> bp;
    bp.reserve(f.breakpoints().size() + 2);
    auto span = f.span();
    for (double x : f.breakpoints()) bp.push_back(x);
    for (double x : {where.lo, where.hi})
        if (x > span.lo && x < span.hi) bp.push_back(x);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    auto v = values_on(f, bp);
    for (std::size_t k = 0; k < v.size(); ++k)
        if (bp[k] >= where.lo && bp[k + 1] <= where.hi) v[k] = 0.0;
    return StepFunction1D(std::move(bp), std::move(v));
}

double integrate(const StepFunction1D& f, double a, double b) {
    if (!(a < b)) reject("integrate needs a < b");
    const auto& bp = f.breakpoints();
    const auto& v = f.values();
    double lo = std::max(a, bp.front());
    double hi = std::min(b, bp.back());
    if (!(lo < hi)) return 0.0;
    auto i = f.locate(lo);
    double sum = 0.0;
    for (; i < v.size() && bp[i] < hi; ++i) {
        double width = std::min(bp[i + 1], hi) - std::max(bp[i], lo);
        sum += v[i] * width;
    }
    return sum;
}

void write_text(std::ostream& out, const StepFunction1D& f) {
    char buf[96];
    out << "stepfn v1 n=" << f.cells() << '\n';
    std::snprintf(buf, sizeof buf, "%.17g\n", f.breakpoints().front());
    out << buf;
    for (std::size_t i = 0; i < f.cells(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", f.breakpoints()[i + 1], f.values()[i]);
        out << buf;
    }
}

StepFunction1D read_text(std::istream& in) {
    std::string magic, version, count;
    if (!(in >> magic >> version >> count) || magic != "stepfn" || version != "v1" ||
        count.rfind("n=", 0) != 0)
        reject("expected header 'stepfn v1 n=<cells>'");
    std::size_t n = 0;
    try {
        n = std::stoull(count.substr(2));
    } catch (const std::exception&) {
        reject("bad cell count in step function header");
    }
    if (n == 0) reject("step function needs at least one cell");
    std::vector<double> bp(n + 1), v(n);
    if (!(in >> bp[0])) reject("missing x0");
    for (std::size_t i = 0; i < n; ++i)
        if (!(in >> bp[i + 1] >> v[i])) reject("truncated step function body");
    return StepFunction1D(std::move(bp), std::move(v));
}

std::string to_text(const StepFunction1D& f) {
    std::ostringstream out;
    write_text(out, f);
    return out.str();
}

StepFunction1D from_text(const std::string& text) {
    std::istringstream in(text);
    return read_text(in);
}

}  // namespace bmo
