#include "bmo/periodic.hpp"

#include <cmath>
#include <cstdio>

#include "bmo/error.hpp"

namespace bmo {

double PeriodicExtension1D::operator()(double x) const {
    double y = std::abs(x - period * std::round(x / period));
    return base(y);
}

PeriodicExtension1D periodic_even_extend(const StepFunction1D& h, double T) {
    if (!(T > 0.0) || !std::isfinite(T)) reject("period must be positive and finite");
    const double half = 0.5 * T;
    for (std::size_t i = 0; i < h.cells(); ++i) {
        auto c = h.cell(i);
        if (h.values()[i] != 0.0 && (c.lo < 0.0 || c.hi > half)) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "cell %zu = [%.17g, %.17g] with value %.17g escapes [0, %.17g]", i,
                          c.lo, c.hi, h.values()[i], half);
            reject(buf);
        }
    }
    return {h.restricted({0.0, half}), T};
}

StepFunction1D materialize(const PeriodicExtension1D& H, Interval window) {
    if (window.degenerate()) reject("materialization window is empty");
    const double half = 0.5 * H.period;
    const auto& xb = H.base.breakpoints();
    const auto& vb = H.base.values();
    const std::size_t n = vb.size();

    double jlo = std::floor(window.lo / half);
    double jhi = std::ceil(window.hi / half);
    if ((jhi - jlo) * static_cast<double>(n) > 2e7)
        reject("materialization would need more than 2e7 cells");

    std::vector<double> bp;
    std::vector<double> v;
    bp.reserve(static_cast<std::size_t>((jhi - jlo) * n) + 1);
    v.reserve(bp.capacity());
    auto push = [&](double right, double value) {
        if (right > bp.back()) {
            bp.push_back(right);
            v.push_back(value);
        }
    };
    bp.push_back(jlo * half);
    for (double j = jlo; j < jhi; j += 1.0) {
        double start = j * half;
        double end = (j + 1.0) * half;
        bool even = std::fmod(j, 2.0) == 0.0;
        if (even) {
            for (std::size_t i = 0; i < n; ++i)
                push(i + 1 == n ? end : start + xb[i + 1], vb[i]);
        } else {
            // Reflected half-period: H(x) = base(end - x).
            for (std::size_t i = n; i-- > 0;)
                push(i == 0 ? end : end - xb[i], vb[i]);
        }
    }
    return StepFunction1D(std::move(bp), std::move(v)).restricted(window);
}

}  // namespace bmo
