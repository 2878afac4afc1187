#include "bmo/constructions.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "bmo/error.hpp"
#include "bmo/periodic.hpp"
#include "bmo/sampler.hpp"

namespace bmo {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

}  // namespace

StepFunction1D build_gn(double n, double c, double max_cell_error, Interval window) {
    if (!(c < -1.0)) reject(fmt("g_n needs c < -1, got c = %.17g", c));
    if (!(n >= 2.0) || std::floor(n) != n || n > 1e15) reject(fmt("g_n needs an integer n >= 2, got %.17g", n));
    if (!(max_cell_error > 0.0)) reject("max_cell_error must be positive");
    if (window.degenerate()) reject("g_n window is empty");
    if (window.length() / n > 1e5)
        reject(fmt("window of length %.17g spans too many half periods of length %.17g", window.length(), n));
    const double factor = 1.0 / (1.0 + std::log(n));
    auto h = sample_to_step(profiles::log_plus(), {0.0, n}, max_cell_error / factor);
    if (static_cast<double>(h.cells()) * (window.length() / n + 2.0) > 5e7)
        reject("g_n materialization exceeds 5e7 cells; raise max_cell_error or shrink the window");
    auto H = materialize(periodic_even_extend(h, 2.0 * n), window);
    return mask_zero(scale(H, factor), {c, 0.0}).merged();
}

double gn_average_closed_form(double n) {
    return (n * std::log(n) - n + 1.0) / (n * (1.0 + std::log(n)));
}

double discontinuity_threshold(double c) { return ((c - 1.0) / c) * std::log(1.0 + c / (c - 1.0)); }

DiscontinuityInstance build_instance(const StepFunction1D& f, double c, double n,
                                     double max_cell_error) {
    if (!(c < -1.0)) reject(fmt("discontinuity instance needs c < -1, got c = %.17g", c));
    for (std::size_t i = 0; i < f.cells(); ++i) {
        const double v = f.values()[i];
        if (v < 0.0) reject("f must be nonnegative");
        if (v > 1.0) reject("f must be bounded by 1");
        const auto cell = f.cell(i);
        if (v != 0.0 && (cell.lo < 0.0 || cell.hi > 1.0)) reject("f must be supported in [0, 1]");
    }
    const double a = integrate(f, 0.0, 1.0);
    if (!(a > std::numbers::ln2))
        reject(fmt("hypothesis int f > ln 2 fails: int f = %.17g, ln 2 = %.17g", a, std::numbers::ln2));
    const double t = discontinuity_threshold(c);
    if (!(a > t))
        reject(fmt("threshold int f > ((c-1)/c) ln(1 + c/(c-1)) fails: int f = %.17g, threshold = %.17g", a, t));
    DiscontinuityInstance inst{f, a, c, n, StepFunction1D::zero({0, 1}), StepFunction1D::zero({0, 1}),
                               {4.0 * c, 2.0 * n}};
    inst.g_n = build_gn(n, c, max_cell_error, inst.window);
    inst.f_n = add(f, scale(inst.g_n, a / (1.0 - c))).restricted(inst.window);
    return inst;
}

BumpSum2D build_gN2d(int N, double p, double q, std::optional<double> clamp) {
    if (N < 2) reject("g_N needs N >= 2");
    if (N > 1000) reject("g_N with N > 1000 has more centers than a double can count");
    if (!(p > 0.0 && q > 0.0 && p + q <= 1.0 + 1e-12))
        reject(fmt("g_N needs p, q > 0 and p + q <= 1, got p + q = %.17g", p + q));
    std::vector<BumpRun> runs;
    for (int k = 0; k <= N; ++k) {
        const double count = std::ldexp(1.0, k);
        runs.push_back({kBumpSpacing * count, kBumpSpacing, count, static_cast<double>(k) / N});
    }
    return BumpSum2D(p, q, std::move(runs), clamp);
}

std::vector<double> stern_brocot_rationals(int count) {
    if (count < 1) reject("rational enumeration needs count >= 1");
    struct Frac {
        long long num, den;
    };
    std::vector<double> out;
    std::vector<Frac> row{{0, 1}, {1, 1}, {2, 1}};
    for (const auto& f : row) {
        if (static_cast<int>(out.size()) == count) return out;
        out.push_back(static_cast<double>(f.num) / f.den);
    }
    while (static_cast<int>(out.size()) < count) {
        std::vector<Frac> next{row.front()};
        for (std::size_t i = 1; i < row.size(); ++i) {
            Frac m{row[i - 1].num + row[i].num, row[i - 1].den + row[i].den};
            if (static_cast<int>(out.size()) < count) out.push_back(static_cast<double>(m.num) / m.den);
            next.push_back(m);
            next.push_back(row[i]);
        }
        row = std::move(next);
    }
    return out;
}

BumpSum2D build_h_rational(int count, double p, double q) {
    const auto r = stern_brocot_rationals(count);
    std::vector<BumpRun> runs;
    for (int m = 1; m <= count; ++m) runs.push_back({kBumpSpacing * m, 0.0, 1.0, r[m - 1]});
    return BumpSum2D(p, q, std::move(runs));
}

ClampPolicy clamp_policy(int N, double p, double q, double cell_size) {
    if (N < 2) reject("clamp policy needs N >= 2");
    if (!(cell_size > 0.0 && cell_size < 1.0)) reject("clamp policy needs a cell size in (0, 1)");
    const double weight = std::pow(std::log(static_cast<double>(N)), q);
    const double peak = std::pow(-std::log(cell_size), p + q);
    ClampPolicy policy{std::ceil(2.0 * weight * peak), cell_size, weight};
    check_clamp(N, q, policy.height);
    return policy;
}

void check_clamp(int N, double q, double height) {
    const double floor = std::pow(std::log(static_cast<double>(N)), q);
    if (!(height >= floor))
        reject(fmt("clamp height %.17g is below the bump scale (ln N)^q = %.17g", height, floor));
}

}  // namespace bmo
