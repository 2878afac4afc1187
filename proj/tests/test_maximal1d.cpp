#include <cmath>
#include <random>

#include "bmo/chord.hpp"
#include "bmo/error.hpp"
#include "bmo/maximal1d.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bmo;
using testing_support::interior_point;
using testing_support::random_step;

TEST_CASE("chord slope search matches the pairwise scan") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 300; ++t) {
        int n = 2 + t % 40;
        std::vector<Vertex> pts;
        double x = 0.0, F = 0.0;
        for (int i = 0; i < n; ++i) {
            x += 0.01 + u(rng);
            F += u(rng) * u(rng) * 3.0;
            pts.push_back({x, F});
        }
        std::size_t split = 1 + t % (n - 1);
        std::vector<Vertex> left(pts.begin(), pts.begin() + split);
        std::vector<Vertex> right(pts.begin() + (t % 2 ? split - 1 : split), pts.end());
        auto fast = max_chord_slope(left, right);
        auto slow = max_chord_slope_brute(left, right);
        REQUIRE(fast.found == slow.found);
        CHECK(fast.slope == doctest::Approx(slow.slope).epsilon(1e-12));
    }
}

TEST_CASE("maximal function of an indicator") {
    auto chi = StepFunction1D::indicator({0.0, 1.0});
    CHECK(mhl_point(chi, -1.0, {-2.0, 2.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mhl_point(chi, 0.5, {-2.0, 2.0}) == 1.0);
    for (int k = 0; k < 100; ++k) {
        double x = -10.0 + 10.0 * k / 99.0;
        double expect = 1.0 / (1.0 - x);
        CHECK(std::abs(mhl_point(chi, x, {-12.0, 3.0}) - expect) <= 1e-9 * expect);
    }
    auto prof = mhl_profile(chi, {-4.0, -2.0, -1.0}, {-5.0, 5.0});
    REQUIRE(prof.size() == 3);
    CHECK(prof[0].value == doctest::Approx(0.2));
    CHECK(prof[1].value == doctest::Approx(1.0 / 3.0));
    CHECK(prof[2].value == doctest::Approx(0.5));
    CHECK(mhl_profile(chi, {}, {-5.0, 5.0}).empty());
    CHECK_THROWS_AS(mhl_profile(chi, {0.0, -1.0}, {-5.0, 5.0}), Rejection);
    CHECK_THROWS_AS(mhl_point(chi, 6.0, {-5.0, 5.0}), Rejection);
}

TEST_CASE("maximal function of a constant") {
    auto c = StepFunction1D::constant(1.0, {-3.0, 3.0});
    for (double x : {-3.0, -1.2, 0.0, 2.5, 3.0}) CHECK(mhl_point(c, x, {-3.0, 3.0}) == doctest::Approx(1.0));
}

TEST_CASE("optimized maximal profile equals the brute-force oracle") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    for (int t = 0; t < 100; ++t) {
        auto f = random_step(rng, 1 + t % 50, {-2.0, 2.0}, -3.0, 3.0);
        Interval w = (t % 3 == 0) ? Interval{-2.5, 2.5} : Interval{-1.5, 1.7};
        std::vector<double> qs;
        for (int k = 0; k < 12; ++k) qs.push_back(std::clamp(u(rng), w.lo, w.hi));
        qs.push_back(std::clamp(f.breakpoints()[f.cells() / 2], w.lo, w.hi));
        qs.push_back(w.lo);
        qs.push_back(w.hi);
        std::sort(qs.begin(), qs.end());
        auto prof = mhl_profile(f, qs, w);
        for (std::size_t k = 0; k < qs.size(); ++k) {
            double b = mhl_brute(f, qs[k], w);
            CHECK(prof[k].value == doctest::Approx(b).epsilon(1e-9));
            CHECK(mhl_point(f, qs[k], w) == prof[k].value);
        }
    }
}

TEST_CASE("random interval probes never exceed the maximal function") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        auto f = random_step(rng, 3 + t % 20, {-1.0, 1.0}, -2.0, 2.0);
        Interval w{-1.5, 1.5};
        auto g = abs(f);
        for (int k = 0; k < 20; ++k) {
            double x = w.lo + u(rng) * w.length();
            double M = mhl_point(f, x, w);
            for (int s = 0; s < 50; ++s) {
                double a = w.lo + u(rng) * (x - w.lo);
                double b = x + u(rng) * (w.hi - x);
                if (b - a < 1e-9) continue;
                CHECK(integrate(g, a, b) / (b - a) <= M * (1 + 1e-12) + 1e-15);
            }
        }
    }
}

TEST_CASE("maximal operator properties") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 60; ++t) {
        auto f = random_step(rng, 2 + t % 25, {-1.0, 1.0}, -2.0, 2.0);
        auto g = random_step(rng, 2 + t % 13, {-1.2, 0.8}, -1.0, 3.0);
        Interval w{-1.5, 1.5}, wide{-3.0, 3.0};
        double x = interior_point(rng, f);
        double Mf = mhl_point(f, x, w);
        CHECK(Mf >= std::abs(f(x)) - 1e-12);
        CHECK(mhl_point(add(f, g), x, w) <= Mf + mhl_point(g, x, w) + 1e-12);
        CHECK(mhl_point(f, x, wide) >= Mf - 1e-15);
        double alpha = 3.0 * u(rng);
        CHECK(mhl_point(scale(f, alpha), x, w) == doctest::Approx(std::abs(alpha) * Mf).epsilon(1e-12));
    }
}

TEST_CASE("scale split partitions the candidate family") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        auto f = random_step(rng, 1 + t % 30, {-1.0, 1.0}, -2.0, 2.0);
        Interval w{-2.0, 2.0};
        double lo = -1.5 + 2.5 * u(rng);
        Interval Q0{lo, lo + 0.01 + 0.4 * u(rng)};
        double x = Q0.lo + u(rng) * Q0.length();
        double c = std::exp(1.0) + 0.01 + 6.0 * u(rng);
        auto s = mhl_scale_split(f, x, Q0, c, w);
        CHECK(std::max(s.local, s.nonlocal) == doctest::Approx(mhl_point(f, x, w)).epsilon(1e-9));
    }
}

TEST_CASE("scale split examples") {
    auto chi = StepFunction1D::indicator({0.0, 1.0});
    auto s = mhl_scale_split(chi, -0.05, {-0.1, 0.0}, 3.0, {-2.0, 2.0});
    CHECK(s.local >= 0.25 / 0.30 - 1e-12);
    auto k = mhl_scale_split(StepFunction1D::constant(2.0, {-5.0, 5.0}), 0.3, {0.2, 0.4}, 4.0, {-5.0, 5.0});
    CHECK(k.local == doctest::Approx(2.0));
    CHECK(k.nonlocal == doctest::Approx(2.0));
    CHECK_THROWS_AS(mhl_scale_split(chi, 0.0, {-0.1, 0.1}, std::exp(1.0), {-1.0, 1.0}), Rejection);
    CHECK_THROWS_AS(mhl_scale_split(chi, 0.5, {-0.1, 0.1}, 3.0, {-1.0, 1.0}), Rejection);
}

TEST_CASE("dyadic nonlocal supremum") {
    auto chi = StepFunction1D::indicator({0.0, 1.0});
    auto d = dyadic_nonlocal(chi, {0.0, 0.25}, {0.0, 2.0});
    CHECK(d.value == 1.0);
    CHECK(d.osc_on_Q0 == 0.0);
    auto k = dyadic_nonlocal(StepFunction1D::constant(0.7, {-8.0, 8.0}), {0.5, 0.75}, {-8.0, 8.0});
    CHECK(k.value == doctest::Approx(0.7));
    CHECK_THROWS_AS(dyadic_nonlocal(chi, {0.0, 0.3}, {0.0, 2.0}), Rejection);
    CHECK_THROWS_AS(dyadic_nonlocal(chi, {0.25, 0.75}, {0.0, 2.0}), Rejection);

    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> kk(-20, 19), mm(-6, 0);
    for (int t = 0; t < 100; ++t) {
        auto f = random_step(rng, 1 + t % 30, {-1.0, 1.0});
        int m = mm(rng);
        double len = std::ldexp(1.0, m);
        double lo = kk(rng) % (1 << (-m)) * len;
        auto r = dyadic_nonlocal(f, {lo, lo + len}, {-2.0, 2.0});
        CHECK(r.osc_on_Q0 == 0.0);
    }
}
