#pragma once

// Certified maximisation of an expensive score over a large candidate stream,
// given a cheap upper bound for it.

#include <algorithm>
#include <cstddef>
#include <queue>
#include <vector>

namespace bmo::detail {

template <class Cand>
struct SearchOutcome {
    Cand best{};
    double value = 0.0;
    bool found = false;
    std::size_t scored = 0;  // candidates seen
    std::size_t exact = 0;   // exact evaluations
    bool widened = false;    // the top slice did not certify and a full pass ran
};

/// `each(cb)` streams every candidate to cb in a fixed order. `bound(c)` must
/// be >= exact(c). `before(x, y)` breaks ties between equal exact values.
/// Exact scores are computed for the top slice by bound (max(1000, 1%));
/// if the best exact score does not dominate every discarded bound, a second
/// pass evaluates every candidate whose bound reaches the running best.
template <class Cand, class Each, class Bound, class Exact, class Before>
SearchOutcome<Cand> certified_max(Each&& each, Bound&& bound, Exact&& exact, Before&& before) {
    SearchOutcome<Cand> out;
    std::size_t count = 0;
    each([&](const Cand&) { ++count; });
    out.scored = count;
    if (count == 0) return out;

    const std::size_t K = std::max<std::size_t>(1000, count / 100);
    struct Item {
        double bound;
        std::size_t order;
        Cand c;
    };
    // Min-heap on bound; later candidates lose ties so the slice is deterministic.
    auto worse = [](const Item& x, const Item& y) {
        if (x.bound != y.bound) return x.bound > y.bound;
        return x.order < y.order;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(worse)> heap(worse);
    double discarded = -1.0;
    std::size_t order = 0;
    each([&](const Cand& c) {
        double b = bound(c);
        Item it{b, order++, c};
        if (heap.size() < K) {
            heap.push(std::move(it));
        } else if (worse(heap.top(), it)) {
            discarded = std::max(discarded, heap.top().bound);
            heap.pop();
            heap.push(std::move(it));
        } else {
            discarded = std::max(discarded, b);
        }
    });

    auto offer = [&](const Cand& c, double v) {
        ++out.exact;
        if (!out.found || v > out.value || (v == out.value && before(c, out.best))) {
            out.best = c;
            out.value = v;
            out.found = true;
        }
    };
    while (!heap.empty()) {
        const Item& it = heap.top();
        offer(it.c, exact(it.c));
        heap.pop();
    }
    if (out.value >= discarded) return out;

    out.widened = true;
    each([&](const Cand& c) {
        if (bound(c) >= out.value) offer(c, exact(c));
    });
    return out;
}

}  // namespace bmo::detail
