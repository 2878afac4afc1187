#include <sstream>

#include "bmo/error.hpp"
#include "bmo/harness.hpp"
#include "doctest.h"

using namespace bmo;

namespace {

std::string csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream out;
    write_csv_header(out);
    write_csv(out, rows);
    return out.str();
}

const ExperimentRow* find(const std::vector<ExperimentRow>& rows, const std::string& metric) {
    for (const auto& r : rows)
        if (r.metric == metric) return &r;
    return nullptr;
}

}  // namespace

TEST_CASE("csv layout") {
    std::vector<ExperimentRow> rows{{"e", "a=1;b=2", "m", 0.5, 1.0, Verdict::Pass},
                                    {"e", "a=1", "n", 2.0, std::nullopt, Verdict::Info},
                                    {"e", "x=1,2", "o", 3.0, 4.0, Verdict::Fail}};
    const auto text = csv(rows);
    CHECK(text.rfind("experiment,params,metric,value,bound,pass\n", 0) == 0);
    CHECK(text.find("e,a=1;b=2,m,0.5,1,true\n") != std::string::npos);
    CHECK(text.find("e,a=1,n,2,,info\n") != std::string::npos);
    CHECK(text.find("e,\"x=1,2\",o,3,4,false\n") != std::string::npos);
    CHECK(any_failed(rows));
    rows.pop_back();
    CHECK_FALSE(any_failed(rows));
    CHECK(to_string(Verdict::Skipped) == "skipped");
    CHECK(to_string(Verdict::Warning) == "warning");
}

TEST_CASE("every metric name and param list is csv safe") {
    std::vector<ExperimentRow> rows;
    auto add = [&](std::vector<ExperimentRow> r) { rows.insert(rows.end(), r.begin(), r.end()); };
    add(exp_maximal_exactness({20, 10, 20, 1}));
    add(exp_dyadic({10, 1}));
    add(exp_john_nirenberg({3, 10, 1}));
    ExpintParams flat;
    flat.carrier = "constant";
    add(exp_expint(flat));
    for (const auto& r : rows) {
        CHECK(r.params.find(',') == std::string::npos);
        CHECK(r.metric.find(',') == std::string::npos);
    }
    CHECK_FALSE(any_failed(rows));
}

TEST_CASE("expint trivial carriers") {
    ExpintParams p;
    p.carrier = "constant";
    auto rows = exp_expint(p);
    for (const auto& r : rows)
        if (r.metric == "integral") CHECK(r.value == 1.0);
    CHECK(find(rows, "tail_decay_rate")->verdict == Verdict::Skipped);

    p.carrier = "product";
    p.lambda = 0.0;
    p.y_samples = 1 << 10;
    rows = exp_expint(p);
    for (const auto& r : rows)
        if (r.metric == "integral") CHECK(r.value == 1.0);

    p.carrier = "wave";
    CHECK_THROWS_AS(exp_expint(p), Rejection);
}

TEST_CASE("experiments are deterministic") {
    const auto a = csv(exp_maximal_exactness({10, 20, 30, 9}));
    const auto b = csv(exp_maximal_exactness({10, 20, 30, 9}));
    CHECK(a == b);
    const auto c = csv(exp_john_nirenberg({2, 20, 4}));
    CHECK(c == csv(exp_john_nirenberg({2, 20, 4})));
}

TEST_CASE("small oracle suite passes") {
    OracleParams p;
    p.mhl_cases = 20;
    p.osc_cases = 8;
    p.grid_cases = 5;
    p.max_grid = 16;
    p.bump_cases = 20;
    const auto rows = oracle_suite(p);
    CHECK(rows.size() == 6);
    for (const auto& r : rows) CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("gn experiment at small n") {
    GnParams p;
    p.n_list = {20, 200};
    p.refine = 6;
    const auto rows = exp_gn(p);
    CHECK_FALSE(any_failed(rows));
    CHECK(find(rows, "bmo_norm_strictly_decreasing")->verdict == Verdict::Pass);
}

TEST_CASE("discontinuity rejects an infeasible instance") {
    DiscontinuityParams p;
    p.c = -0.5;
    CHECK_THROWS_AS(exp_discontinuity(p), Rejection);
}
