#include <cmath>
#include <numbers>

#include "bmo/constructions.hpp"
#include "bmo/error.hpp"
#include "bmo/oscillation.hpp"
#include "bmo/sampler.hpp"
#include "doctest.h"

using namespace bmo;

TEST_CASE("g_n basic properties") {
    const double c = -3.0;
    for (double n : {100.0, 1000.0}) {
        Interval window{4 * c, 2 * n};
        auto g = build_gn(n, c, 1e-3, window);
        double top = 0.0;
        for (std::size_t i = 0; i < g.cells(); ++i) {
            const double v = g.values()[i];
            CHECK(v >= 0.0);
            top = std::max(top, v);
            if (overlap(g.cell(i), {c, 1.0}) > 0.0) CHECK(v == 0.0);
        }
        CHECK(top <= 1.0);
        CHECK(top == doctest::Approx(std::log(n) / (1 + std::log(n))).epsilon(1e-3));
        CHECK(integrate(g, 0.0, n) / n == doctest::Approx(gn_average_closed_form(n)).epsilon(1e-12));
        // Even about n and 2n-periodic: the mass on [n, 2n] equals the mass on [0, n].
        CHECK(integrate(g, n, 2 * n) == doctest::Approx(integrate(g, 0.0, n)).epsilon(1e-12));
    }
    CHECK(gn_average_closed_form(1e4) == doctest::Approx(0.80413).epsilon(1e-5));
    CHECK_THROWS_AS(build_gn(100, -1.0, 1e-3, {-4, 200}), Rejection);
    CHECK_THROWS_AS(build_gn(1, -3.0, 1e-3, {-4, 200}), Rejection);
    CHECK_THROWS_AS(build_gn(100.5, -3.0, 1e-3, {-4, 200}), Rejection);
}

TEST_CASE("discontinuity instance thresholds") {
    CHECK(discontinuity_threshold(-3.0) == doctest::Approx(4.0 / 3.0 * std::log(7.0 / 4.0)));
    CHECK(discontinuity_threshold(-3.0) == doctest::Approx(0.746154).epsilon(1e-6));
    CHECK(discontinuity_threshold(-1.01) == doctest::Approx(0.810).epsilon(2e-3));
    auto f = StepFunction1D::indicator({0, 1});
    auto inst = build_instance(f, -3.0, 100, 1e-3);
    CHECK(inst.a == 1.0);
    CHECK(inst.window == Interval{-12, 200});
    auto diff = subtract(inst.f_n, f);
    CHECK(approx_equal(diff.restricted(inst.window), scale(inst.g_n, 0.25).restricted(inst.window), 1e-14));

    auto weak = StepFunction1D::indicator({0, 1}, 0.70);
    CHECK_NOTHROW(build_instance(StepFunction1D::indicator({0, 1}, 0.75), -3.0, 100, 1e-3));
    CHECK_THROWS_AS(build_instance(weak, -3.0, 100, 1e-3), Rejection);
    try {
        build_instance(weak, -1.01, 100, 1e-3);
        FAIL("expected rejection");
    } catch (const Rejection& e) {
        CHECK(std::string(e.what()).find("threshold") != std::string::npos);
    }
    CHECK_THROWS_AS(build_instance(StepFunction1D::indicator({0, 1}, 0.6), -3.0, 100, 1e-3), Rejection);
    CHECK_THROWS_AS(build_instance(StepFunction1D::indicator({0, 1}, 1.5), -3.0, 100, 1e-3), Rejection);
    CHECK_THROWS_AS(build_instance(StepFunction1D::indicator({0, 2}), -3.0, 100, 1e-3), Rejection);
    CHECK_THROWS_AS(build_instance(f, -0.5, 100, 1e-3), Rejection);
}

TEST_CASE("g_N lattice") {
    auto g = build_gN2d(2, 0.5, 0.5);
    CHECK(g.center_count() == 7.0);
    CHECK(g.spacing_certified());
    CHECK(g.support_left() == doctest::Approx(kBumpSpacing - 1.0));
    REQUIRE(g.runs().size() == 3);
    CHECK(g.runs()[1].x0 == doctest::Approx(2 * kBumpSpacing));
    CHECK(g.runs()[2].y == 1.0);
    const double x = kBumpSpacing + 0.2;
    CHECK(g(x, 0.3) == doctest::Approx(log_minus_pow(0.2, 0.5) * log_minus_pow(0.3, 0.5)));
    CHECK(g(x, -1.2) == 0.0);
    CHECK(g(5 * kBumpSpacing, -1.0001) == 0.0);

    auto big = build_gN2d(64, 0.5, 0.5);
    CHECK(big.spacing_certified());
    CHECK(big.center_count() == doctest::Approx(std::ldexp(1.0, 65) - 1));
    CHECK_THROWS_AS(build_gN2d(4, 0.6, 0.5), Rejection);
    CHECK_THROWS_AS(build_gN2d(1, 0.5, 0.5), Rejection);
}

TEST_CASE("rational bump lattice") {
    auto r = stern_brocot_rationals(9);
    std::vector<double> expect{0, 1, 2, 0.5, 1.5, 1.0 / 3, 2.0 / 3, 4.0 / 3, 5.0 / 3};
    REQUIRE(r.size() == expect.size());
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(expect[i]));
    auto h1 = build_h_rational(1, 0.5, 0.5);
    CHECK(h1.center_count() == 1.0);
    CHECK(h1(kBumpSpacing + 0.1, 0.2) == doctest::Approx(log_minus_pow(0.1, 0.5) * log_minus_pow(0.2, 0.5)));

    // The slice over one bump is the 1D profile times the row weight.
    auto h = build_h_rational(16, 0.5, 0.5);
    CHECK(h.spacing_certified());
    const double y = 0.9;
    const int m = 5;  // r_5 = 3/2
    const double cx = kBumpSpacing * m;
    auto row = slice_y(h, y, {cx - 1, cx + 1}, 1e-4);
    auto phi = sample_to_step(profiles::log_minus_pow(0.5), {-1, 1}, 1e-4);
    const double w = log_minus_pow(y - 1.5, 0.5);
    CHECK(mean_osc(row, {cx - 1, cx + 1}) == doctest::Approx(mean_osc(phi, {-1, 1}) * w).epsilon(1e-3));
    CHECK_THROWS_AS(build_h_rational(0, 0.5, 0.5), Rejection);
}

TEST_CASE("clamp policy") {
    CHECK(clamp_policy(4, 0.5, 0.5, 1.0 / 16).height == 7.0);
    CHECK(clamp_policy(16, 0.5, 0.5, 1.0 / 16).height == 10.0);
    CHECK(clamp_policy(64, 0.5, 0.5, 1.0 / 16).height == 12.0);
    CHECK(clamp_policy(16, 0.5, 0.5, 1.0 / 16).floor == doctest::Approx(std::sqrt(std::log(16.0))));
    CHECK_NOTHROW(check_clamp(16, 0.5, 1.7));
    CHECK_THROWS_AS(check_clamp(16, 0.5, 1.6), Rejection);
    CHECK_THROWS_AS(clamp_policy(16, 0.5, 0.5, 2.0), Rejection);
}
