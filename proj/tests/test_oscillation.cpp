#include <cmath>
#include <random>
#include <sstream>

#include "bmo/error.hpp"
#include "bmo/oscillation.hpp"
#include "bmo/sampler.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bmo;
using testing_support::random_step;

TEST_CASE("average examples") {
    auto chi = StepFunction1D::indicator({0.0, 1.0});
    CHECK(average(chi, {-1.0, 1.0}) == 0.5);
    CHECK(average(chi, {2.0, 3.0}) == 0.0);
    CHECK_THROWS_AS(average(chi, {1.0, 1.0}), Rejection);

    const double e = std::exp(1.0);
    auto lp = sample_to_step(profiles::log_plus(), {0.0, e}, 0.01);
    CHECK(average(lp, {0.0, e}) == doctest::Approx(1.0 / e).epsilon(1e-12));
    for (double n : {10.0, 500.0}) {
        auto g = sample_to_step(profiles::log_plus(), {0.0, n}, 0.01);
        CHECK(average(g, {0.0, n}) == doctest::Approx((n * std::log(n) - n + 1) / n).epsilon(1e-12));
    }
}

TEST_CASE("mean oscillation examples") {
    auto chi = StepFunction1D::indicator({0.0, 1.0});
    CHECK(mean_osc(chi, {-1.0, 1.0}) == 0.5);
    CHECK(mean_osc(chi, {-1.0, 1.0}, OscMode::L2) == 0.5);
    auto c = StepFunction1D::constant(3.7, {-5.0, 5.0});
    CHECK(mean_osc(c, {-1.0, 2.0}) == 0.0);
    CHECK(mean_osc(c, {-1.0, 2.0}, OscMode::L2) == 0.0);

    // int_0^1 |ln x + 1| dx = 2/e, so the mean oscillation over [-1, 1] is 2/e.
    auto lg = sample_to_step(profiles::log_abs(), {-1.0, 1.0}, 1e-3);
    CHECK(mean_osc(lg, {-1.0, 1.0}) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-3));
    CHECK_THROWS_AS(mean_osc(chi, {0.5, 0.5}), Rejection);
}

TEST_CASE("mean oscillation invariances") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int t = 0; t < 200; ++t) {
        auto f = random_step(rng, 1 + t % 23, {-2.0, 2.0});
        double a = u(rng), b = u(rng);
        if (a == b) continue;
        Interval I{std::min(a, b), std::max(a, b)};
        double base = mean_osc(f, I);
        double shifted = mean_osc(add(f, StepFunction1D::constant(5.5, {-4.0, 4.0})), I);
        CHECK(shifted == doctest::Approx(base).epsilon(1e-9));
        double alpha = u(rng);
        CHECK(mean_osc(scale(f, alpha), I) == doctest::Approx(std::abs(alpha) * base).epsilon(1e-9));
        CHECK(mean_osc(abs(f), I) <= 2.0 * base + 1e-12);
        CHECK(base <= mean_osc(f, I, OscMode::L2) + 1e-12);
    }
}

TEST_CASE("BMO norm of a jump approaches one half") {
    auto h = sample_to_step(profiles::heaviside(), {-8.0, 8.0}, 0.01);
    double prev = 0.0;
    for (int r = 0; r <= 8; r += 2) {
        auto rep = bmo_norm_1d(h, {-8.0, 8.0}, r);
        CHECK(rep.value <= 0.5 + 1e-12);
        CHECK(rep.value >= prev - 1e-12);
        prev = rep.value;
    }
    CHECK(prev == doctest::Approx(0.5).epsilon(1e-12));
    auto c = bmo_norm_1d(StepFunction1D::constant(2.0, {-1.0, 1.0}), {-1.0, 1.0}, 6);
    CHECK(c.value == 0.0);
}

TEST_CASE("certified search agrees with the exhaustive scan") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 60; ++t) {
        auto f = random_step(rng, 1 + t % 40, {-1.0, 1.0}, -2.0, 2.0);
        Interval w{-1.25, 1.0};
        for (OscMode mode : {OscMode::L1, OscMode::L2}) {
            auto fast = bmo_norm_1d(f, w, 4, mode);
            auto slow = bmo_norm_1d_exhaustive(f, w, 4, mode);
            CHECK(fast.value == doctest::Approx(slow.value).epsilon(1e-9));
            CHECK(mean_osc(f, fast.argmax, mode) == doctest::Approx(fast.value).epsilon(1e-9));
        }
    }
}

TEST_CASE("certified search on many cells agrees with the exhaustive scan") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 12; ++t) {
        auto f = random_step(rng, 80 + 20 * t, {-1.0, 1.0}, -2.0, 2.0);
        if (t % 3 == 0) {
            // Repeated values and constant stretches.
            auto v = f.values();
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = (i / 7) % 3 == 0 ? 1.0 : std::round(v[i]);
            f = StepFunction1D(f.breakpoints(), v);
        }
        Interval w{-1.0, 1.0};
        auto fast = bmo_norm_1d(f, w, 3);
        auto slow = bmo_norm_1d_exhaustive(f, w, 3);
        CHECK(fast.value == doctest::Approx(slow.value).epsilon(1e-9));
        auto om = omega(f, 0.5, w, 5);
        CHECK(mean_osc(f, om.argmax) == doctest::Approx(om.value).epsilon(1e-9));
        CHECK(om.value <= bmo_norm_1d(f, w, 5).value + 1e-12);
    }
    auto flat = StepFunction1D(random_step(rng, 200, {0.0, 1.0}).breakpoints(), std::vector<double>(200, 0.3));
    CHECK(bmo_norm_1d(flat, {0.0, 1.0}, 2).value == 0.0);
}

TEST_CASE("BMO norm of sampled log- is refinement stable") {
    auto f = sample_to_step(profiles::log_minus_pow(1.0), {-1.0, 1.0}, 0.25);
    Interval w{-1.0, 1.0};
    auto fast8 = bmo_norm_1d(f, w, 8);
    auto slow8 = bmo_norm_1d_exhaustive(f, w, 8);
    CHECK(fast8.value == doctest::Approx(slow8.value).epsilon(1e-9));
    auto fast12 = bmo_norm_1d(f, w, 12);
    CHECK(fast12.value >= fast8.value - 1e-12);
    CHECK(fast12.value >= 0.9 * slow8.value);
    CHECK(fast12.value <= 1.1 * slow8.value);
}

TEST_CASE("BMO norm is monotone in refinement and window") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
        auto f = random_step(rng, 2 + t % 30, {-1.5, 1.5}, -1.0, 3.0);
        double prev = 0.0;
        for (int r = 1; r <= 7; ++r) {
            auto rep = bmo_norm_1d(f, {-1.0, 1.0}, r);
            CHECK(rep.value >= prev - 1e-12);
            prev = rep.value;
            // same grid spacing on a window twice as wide
            auto wide = bmo_norm_1d(f, {-2.0, 2.0}, r + 1);
            CHECK(wide.value >= rep.value - 1e-12);
        }
    }
}

TEST_CASE("omega examples") {
    auto h = sample_to_step(profiles::heaviside(), {-1.0, 1.0}, 0.01);
    for (int j = 1; j <= 6; ++j) {
        double delta = std::ldexp(1.0, -j);
        CHECK(omega(h, delta, {-1.0, 1.0}, 10).value == doctest::Approx(0.5).epsilon(1e-12));
    }
    auto c = StepFunction1D::constant(1.0, {-1.0, 1.0});
    CHECK(omega(c, 0.25, {-1.0, 1.0}, 8).value == 0.0);
    CHECK_THROWS_AS(omega(c, 0.0, {-1.0, 1.0}, 8), Rejection);
    // spacing 2/2^4 = 1/8 exceeds delta/8
    CHECK_THROWS_AS(omega(c, 0.5, {-1.0, 1.0}, 4), Rejection);
}

TEST_CASE("omega of a VMO profile decreases with delta") {
    auto f = sample_to_step(profiles::log_minus_pow(0.5), {-1.0, 1.0}, 0.02);
    double prev = INFINITY;
    double widest = 0.0;
    for (int j = 2; j <= 10; ++j) {
        double w = omega(f, std::ldexp(1.0, -j), {-1.0, 1.0}, 14).value;
        CHECK(w < prev);
        prev = w;
        if (j == 2) widest = w;
    }
    CHECK(prev < widest);
}

TEST_CASE("omega is monotone in delta") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 10; ++t) {
        auto f = random_step(rng, 10 + t, {-1.0, 1.0});
        double prev = 0.0;
        for (int j = 6; j >= 0; --j) {
            double w = omega(f, std::ldexp(1.0, -j), {-1.0, 1.0}, 10).value;
            CHECK(w >= prev - 1e-12);
            prev = w;
        }
    }
}

TEST_CASE("subset oscillation matches the logarithmic closed form") {
    auto lg = sample_to_step(profiles::log_abs(), {-1.0, 1.0}, 1e-4);
    for (int k = 1; k <= 5; ++k) {
        double r = std::exp(-k);
        auto s = subset_osc(lg, {-1.0, 1.0}, {{-r, r}});
        CHECK(s.value == doctest::Approx(k).epsilon(1e-3));
        CHECK(s.jn_bound == doctest::Approx(1.0 + k).epsilon(1e-12));
    }
    auto whole = subset_osc(lg, {-1.0, 1.0}, {{-1.0, 1.0}});
    CHECK(whole.value == doctest::Approx(mean_osc(lg, {-1.0, 1.0})).epsilon(1e-12));
    CHECK(whole.jn_bound == 1.0);

    auto c = StepFunction1D::constant(4.0, {-1.0, 1.0});
    CHECK(subset_osc(c, {-1.0, 1.0}, {{-0.5, -0.25}, {0.1, 0.2}}).value == 0.0);
    CHECK_THROWS_AS(subset_osc(c, {-1.0, 1.0}, {{0.5, 1.5}}), Rejection);
    CHECK_THROWS_AS(subset_osc(c, {-1.0, 1.0}, {{0.5, 0.5}}), Rejection);
    CHECK_THROWS_AS(subset_osc(c, {-1.0, 1.0}, {{0.1, 0.5}, {0.4, 0.6}}), Rejection);
}

TEST_CASE("oscillation over an interval union") {
    auto chi = StepFunction1D::indicator({0.0, 1.0});
    // two disjoint pieces, one inside the support, one outside: two-level function
    CHECK(mean_osc(chi, std::vector<Interval>{{-1.0, -0.5}, {0.25, 0.75}}) == doctest::Approx(0.5));
    CHECK(mean_osc(chi, std::vector<Interval>{{0.0, 0.5}, {0.5, 1.0}}) == 0.0);
}

TEST_CASE("report CSV layout") {
    auto chi = StepFunction1D::indicator({0.0, 1.0});
    auto rep = bmo_norm_1d(chi, {-1.0, 1.0}, 2);
    std::ostringstream out;
    write_report_csv_header(out);
    write_report_csv(out, rep);
    auto text = out.str();
    CHECK(text.rfind("family,window_lo,window_hi,refine,mode,delta,value,argmax_lo,argmax_hi\n", 0) == 0);
    CHECK(text.find("intervals,-1,1,2,L1,0,0.5,") != std::string::npos);
}

TEST_CASE("discrete mean oscillation") {
    CHECK(discrete_mean_osc({1.0, 1.0, 1.0}) == 0.0);
    CHECK(discrete_mean_osc({0.0, 1.0}) == 0.5);
    CHECK(discrete_mean_osc(std::vector<double>(7, 0.1)) == 0.0);
}
