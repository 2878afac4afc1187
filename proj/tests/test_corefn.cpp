#include <cmath>
#include <random>
#include <sstream>

#include "bmo/error.hpp"
#include "bmo/oscillation.hpp"
#include "bmo/periodic.hpp"
#include "bmo/sampler.hpp"
#include "bmo/step_function.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bmo;
using testing_support::random_step;

TEST_CASE("constant profile samples to a single cell") {
    auto f = sample_to_step(profiles::constant(1.0), {0.0, 1.0}, 0.3);
    REQUIRE(f.cells() == 1);
    CHECK(f.values()[0] == 1.0);
}

TEST_CASE("log+ cell averages match the closed-form antiderivative") {
    const double eps = 0.1;
    auto f = sample_to_step(profiles::log_plus(), {1.0, std::exp(1.0)}, eps);
    REQUIRE(f.cells() >= 10);
    for (std::size_t i = 0; i < f.cells(); ++i) {
        auto c = f.cell(i);
        double expect = ((c.hi * std::log(c.hi) - c.hi) - (c.lo * std::log(c.lo) - c.lo)) / c.length();
        CHECK(f.values()[i] == doctest::Approx(expect).epsilon(1e-12));
        CHECK(std::log(c.hi) - std::log(c.lo) <= eps * (1 + 1e-12));
    }
}

TEST_CASE("indicator samples to its exact three-cell form") {
    auto f = sample_to_step(profiles::indicator({0.0, 1.0}), {-2.0, 2.0}, 0.01);
    REQUIRE(f.cells() == 3);
    CHECK(f.breakpoints() == std::vector<double>{-2.0, 0.0, 1.0, 2.0});
    CHECK(f.values() == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("sampling error is uniform on monotone pieces") {
    struct Case {
        Sampler1D s;
        Interval w;
        double eps;
    };
    std::vector<Case> cases = {
        {profiles::log_plus(), {0.0, 50.0}, 0.05},
        {profiles::log_plus(), {-7.0, 3.0}, 0.02},
        {profiles::log_minus_pow(0.5), {1e-3, 1.0}, 0.01},
        {profiles::log_minus_pow(0.3), {-1.5, -1e-4}, 0.02},
        {profiles::identity(), {-1.0, 2.0}, 0.125},
    };
    for (const auto& c : cases) {
        auto f = sample_to_step(c.s, c.w, c.eps);
        for (int k = 0; k < 4000; ++k) {
            double x = c.w.lo + (k + 0.37) / 4000.0 * c.w.length();
            CHECK(std::abs(f(x) - c.s.evaluator(x)) <= c.eps * (1 + 1e-9));
        }
    }
}

TEST_CASE("singular profiles keep their exact integral") {
    auto f = sample_to_step(profiles::log_minus_pow(0.5), {-1.0, 1.0}, 0.01);
    CHECK(integrate(f, -1.0, 1.0) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    auto g = sample_to_step(profiles::log_abs(), {-1.0, 1.0}, 0.01);
    CHECK(integrate(g, -1.0, 1.0) == doctest::Approx(-2.0).epsilon(1e-12));
    // the innermost cells hug the singularity
    CHECK(g.cell(g.locate(0.0)).length() <= 2e-12);
}

TEST_CASE("sampler rejections") {
    Sampler1D bad;
    bad.evaluator = [](double x) { return x > 0.3 ? std::nan("") : x; };
    try {
        sample_to_step(bad, {0.0, 1.0}, 0.1);
        FAIL("expected rejection");
    } catch (const Rejection& e) {
        CHECK(std::string(e.what()).find("x = ") != std::string::npos);
    }
    CHECK_THROWS_AS(sample_to_step(profiles::identity(), {1.0, 1.0}, 0.1), Rejection);
    CHECK_THROWS_AS(sample_to_step(profiles::identity(), {0.0, 1.0}, 0.0), Rejection);
}

TEST_CASE("step algebra examples") {
    auto chi = StepFunction1D::indicator({0.0, 1.0});
    CHECK(clamp(scale(chi, 5.0), 2.0) == StepFunction1D::indicator({0.0, 1.0}, 2.0));
    CHECK_THROWS_AS(clamp(chi, 0.0), Rejection);
    CHECK_THROWS_AS(clamp(chi, -1.0), Rejection);

    auto masked = mask_zero(StepFunction1D::constant(1.0, {-2.0, 2.0}), {-1.0, 0.0});
    CHECK(masked == StepFunction1D({-2.0, -1.0, 0.0, 2.0}, {1.0, 0.0, 1.0}));

    auto sum = add(chi, StepFunction1D::indicator({0.5, 2.0}));
    CHECK(sum == StepFunction1D({0.0, 0.5, 1.0, 2.0}, {1.0, 2.0, 1.0}));

    auto c = clamp(StepFunction1D({0, 1, 2, 3}, {-7.0, 0.5, 9.0}), 1.0);
    CHECK(c.values() == std::vector<double>{-1.0, 0.5, 1.0});
}

TEST_CASE("integrate examples") {
    auto chi = StepFunction1D::indicator({0.0, 1.0});
    CHECK(integrate(chi, -1.0, 1.0) == 1.0);
    CHECK(integrate(chi, 3.0, 4.0) == 0.0);
    CHECK(integrate(chi, -5.0, -4.0) == 0.0);
    CHECK_THROWS_AS(integrate(chi, 1.0, 1.0), Rejection);
    CHECK_THROWS_AS(integrate(chi, 2.0, 1.0), Rejection);

    for (double n : {10.0, 1000.0}) {
        const double eps = 0.01;
        auto f = sample_to_step(profiles::log_plus(), {0.0, n}, eps);
        double exact = n * std::log(n) - n + 1.0;
        CHECK(std::abs(integrate(f, 0.0, n) - exact) <= n * eps);
        CHECK(integrate(f, 0.0, n) == doctest::Approx(exact).epsilon(1e-11));
    }
}

TEST_CASE("equality is canonical") {
    auto f = StepFunction1D({0, 1, 2, 3}, {1.0, 1.0, 2.0});
    CHECK(f == f.merged());
    CHECK(f.merged().cells() == 2);
    CHECK(f == StepFunction1D({-1, 0, 2, 3, 5}, {0.0, 1.0, 2.0, 0.0}));
    CHECK(StepFunction1D::zero({0, 1}) == StepFunction1D::zero({5, 9}));
    CHECK_FALSE(f == scale(f, 2.0));
    CHECK(approx_equal(f, StepFunction1D({0, 2 + 1e-12, 3}, {1.0, 2.0 + 1e-12})));
}

TEST_CASE("step algebra properties on random inputs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int t = 0; t < 200; ++t) {
        auto f = random_step(rng, 1 + t % 17, {-2.0, 2.0});
        auto g = random_step(rng, 1 + t % 11, {-1.0, 3.0});
        auto h = random_step(rng, 1 + t % 5, {-3.0, 0.5});
        CHECK(add(f, g) == add(g, f));
        CHECK(approx_equal(add(add(f, g), h), add(f, add(g, h)), 1e-12));

        double a = u(rng), b = u(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        CHECK(integrate(f.merged(), a, b) == doctest::Approx(integrate(f, a, b)).epsilon(1e-12));
        CHECK(integrate(abs(f), a, b) >= std::abs(integrate(f, a, b)));
        CHECK(integrate(add(f, g), a, b) ==
              doctest::Approx(integrate(f, a, b) + integrate(g, a, b)).epsilon(1e-10));
    }
}

TEST_CASE("restriction pads and clips") {
    auto chi = StepFunction1D::indicator({0.0, 1.0});
    auto r = chi.restricted({-1.0, 0.5});
    CHECK(r.breakpoints() == std::vector<double>{-1.0, 0.0, 0.5});
    CHECK(r.values() == std::vector<double>{0.0, 1.0});
}

TEST_CASE("text serialization round trips bit-exactly") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        auto f = random_step(rng, 1 + t, {-M_PI, std::exp(1.0)});
        auto g = from_text(to_text(f));
        CHECK(g.breakpoints() == f.breakpoints());
        CHECK(g.values() == f.values());
    }
    CHECK(to_text(StepFunction1D::indicator({0, 1})) == "stepfn v1 n=1\n0\n1 1\n");
    CHECK_THROWS_AS(from_text("stepfn v2 n=1\n0\n1 1\n"), Rejection);
    CHECK_THROWS_AS(from_text("stepfn v1 n=2\n0\n1 1\n"), Rejection);
    CHECK_THROWS_AS(from_text("stepfn v1 n=2\n0\n1 1\n0.5 2\n"), Rejection);
}

TEST_CASE("even periodic extension examples") {
    auto H = periodic_even_extend(StepFunction1D::indicator({0.0, 1.0}), 2.0);
    CHECK(H(0.5) == 1.0);
    CHECK(H(-0.5) == 1.0);
    CHECK(H(2.5) == 1.0);
    CHECK(H(1.5) == 1.0);
    auto m = materialize(H, {-3.0, 3.0});
    for (double x : {-2.5, -1.5, -0.5, 0.5, 1.5, 2.5}) CHECK(m(x) == 1.0);

    const double eps = 1e-3;
    auto id = sample_to_step(profiles::identity(), {0.0, 1.0}, eps);
    auto Hid = periodic_even_extend(id, 2.0);
    CHECK(Hid(-0.5) == doctest::Approx(0.5).epsilon(2 * eps));
    CHECK(Hid(2.5) == doctest::Approx(0.5).epsilon(2 * eps));
    auto mid = materialize(Hid, {-4.0, 4.0});
    CHECK(mid(-0.5) == doctest::Approx(0.5).epsilon(2 * eps));
    CHECK(mid(2.5) == doctest::Approx(0.5).epsilon(2 * eps));
    CHECK(mid(1.25) == doctest::Approx(0.75).epsilon(2 * eps));
}

TEST_CASE("support violations are rejected with the escaping cell") {
    auto h = StepFunction1D({0.0, 0.5, 1.5}, {1.0, 2.0});
    try {
        periodic_even_extend(h, 2.0);
        FAIL("expected rejection");
    } catch (const Rejection& e) {
        CHECK(std::string(e.what()).find("cell 1") != std::string::npos);
    }
    // zero cells outside [0, T/2] are fine
    CHECK_NOTHROW(periodic_even_extend(StepFunction1D({-1.0, 0.0, 1.0}, {0.0, 3.0}), 2.0));
}

TEST_CASE("materialization agrees with folding and across windows") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (double T : {1.0, 2.0, 8.0, 2.5}) {
        for (int t = 0; t < 10; ++t) {
            auto h = random_step(rng, 1 + t * 3, {0.0, T / 2});
            auto H = periodic_even_extend(h, T);
            auto big = materialize(H, {-4 * T, 5 * T});
            auto small = materialize(H, {-1.3 * T, 2.1 * T});
            CHECK(big.restricted({-1.3 * T, 2.1 * T}) == small);
            for (int k = 0; k < 200; ++k) {
                double x = u(rng) * T / 8;
                if (!(x > -4 * T && x < 4 * T)) continue;
                double folded = H(x);
                CHECK(big(x) == folded);
                CHECK(H(-x) == folded);
                CHECK(H(x + T) == doctest::Approx(folded));
            }
        }
    }
}
