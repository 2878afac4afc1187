#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "bmo/step_function.hpp"

namespace testing_support {

// Random step function with `n` cells on `span`, values in [lo, hi].
inline bmo::StepFunction1D random_step(std::mt19937_64& rng, std::size_t n, bmo::Interval span,
                                       double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> pos(span.lo, span.hi);
    std::uniform_real_distribution<double> val(lo, hi);
    std::vector<double> bp{span.lo, span.hi};
    while (bp.size() < n + 1) bp.push_back(pos(rng));
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    std::vector<double> v(bp.size() - 1);
    for (auto& x : v) x = val(rng);
    return {bp, v};
}

// Point strictly inside a random cell, away from its edges.
inline double interior_point(std::mt19937_64& rng, const bmo::StepFunction1D& f) {
    std::uniform_int_distribution<std::size_t> pick(0, f.cells() - 1);
    std::uniform_real_distribution<double> t(0.1, 0.9);
    auto c = f.cell(pick(rng));
    return c.lo + t(rng) * c.length();
}

}  // namespace testing_support
