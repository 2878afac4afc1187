// Runs the ten acceptance criteria at their pinned parameters and prints one
// PASS/FAIL line each. Optional arguments pick a subset: `acceptance 1 4 9`.
// With BMO_ACCEPTANCE_CSV set, every experiment row is also written there.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "bmo/error.hpp"
#include "bmo/harness.hpp"

using namespace bmo;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::function<std::vector<ExperimentRow>()> run;
    std::vector<std::string> metrics;  // rows that decide the criterion
    std::vector<std::string> reported;  // info rows echoed under the verdict line
};

Tolerances pinned() {
    Tolerances t;
    t.mhl_closed_form_rel = 1e-9;
    t.oracle_abs = 1e-9;
    t.extension_constant = 10.0;
    t.gn_average_abs = 1e-4;
    t.mf_equal_abs = 1e-6;
    t.discontinuity_bound_abs = 1e-4;
    t.discontinuity_floor = 0.003;
    t.discontinuity_ratio = 0.1;
    t.vmo_halving = 0.5;
    t.non_vmo_flat_rel = 0.05;
    t.jn_exact_abs = 1e-3;
    t.jn_constant = 2.0;
    t.product_drift_rel = 0.02;
    t.fubini_lo = 0.25;
    t.fubini_hi = 4.0;
    t.strong_norm_factor = 1.5;
    t.strong_lower_abs = 1e-3;
    t.expint_stability_rel = 0.05;
    return t;
}

std::vector<Criterion> criteria(const Tolerances& tol) {
    std::vector<Criterion> out;
    out.push_back({1, "maximal function exactness and oracle equivalence",
                   [&] { return exp_maximal_exactness(MaximalParams{100, 200, 50, 1}, tol); },
                   {"max_rel_error_vs_1/(1-x)", "max_abs_dev_optimized_vs_brute"},
                   {}});
    out.push_back({2, "even periodic extension norm bound",
                   [&] {
                       ExtensionParams p;
                       p.cases = 50;
                       p.periods = {1.0, 2.0, 8.0};
                       p.refine = 10;
                       return exp_extension(p, tol);
                   },
                   {"max_ratio_norm_H_over_norm_h"},
                   {}});
    out.push_back({3, "g_n properties, average and decreasing norm",
                   [&] {
                       GnParams p;
                       p.c = -3.0;
                       p.n_list = {1e2, 1e3, 1e4};
                       return exp_gn(p, tol);
                   },
                   {"min_value", "max_abs_on_[c:1]", "max_value", "avg_[0:n]_minus_closed_form",
                    "bmo_norm_strictly_decreasing"},
                   {"bmo_norm"}});
    out.push_back({4, "discontinuity of M on BMO",
                   [&] {
                       DiscontinuityParams p;
                       p.c = -3.0;
                       p.n_list = {1e2, 1e3, 1e4};
                       return exp_discontinuity(p, tol);
                   },
                   {"max_abs_Mfn_minus_Mf_on_[c:0]", "osc_Mfn_minus_Mf_on_[2c:0]", "osc_at_largest_n",
                    "bmo_norm_fn_minus_f_strictly_decreasing"},
                   {"lower_bound_closed_form", "bmo_norm_fn_minus_f", "norm_ratio_last_over_previous"}});
    out.push_back({5, "VMO preservation and the non-VMO flag",
                   [&] { return exp_vmo(VmoParams{}, tol); },
                   {"omega_Mf_max_increase", "omega_Mf_last_over_first", "non_vmo_flag_relative_spread"},
                   {}});
    out.push_back({6, "John-Nirenberg subset oscillation",
                   [&] { return exp_john_nirenberg(JnParams{5, 100, 3}, tol); },
                   {"max_abs_value_minus_k", "max_value_over_(1+ln(|Q|/|A|))"},
                   {}});
    out.push_back({7, "product bump: squares stabilization, rectangle growth, slice decomposition",
                   [&] {
                       ProductParams p;
                       p.coarse = 6;
                       p.fine = 8;
                       p.caps = {4.0, 16.0, 64.0};
                       p.fubini_cases = 200;
                       p.fubini_size = 64;
                       return exp_product(p, tol);
                   },
                   {"squares_norm_relative_drift", "rects_norm_strictly_increasing_in_cap", "fubini_ratio_min",
                    "fubini_ratio_max"},
                   {"squares_bmo_norm", "rects_bmo_norm"}});
    out.push_back({8, "g_N: bounded norm, directional lower bound, support, growing oscillation",
                   [&] {
                       StrongParams p;
                       p.N_list = {4, 16, 64};
                       p.sample = 32;
                       return exp_strong(p, tol);
                   },
                   {"squares_norm_max_over_min", "min_Me1_g_on_[0:1]^2_minus_bound", "max_Me1_G_for_y<-1",
                    "osc_Me1_strictly_increasing", "osc_Ms_lower_strictly_increasing"},
                   {"squares_bmo_norm_G", "osc_Me1_G_on_[-3:3]^2", "osc_Ms_lower_G_on_[-3:3]^2"}});
    out.push_back({9, "dyadic nonlocal part is constant on Q0",
                   [&] { return exp_dyadic(DyadicParams{100, 5}, tol); },
                   {"max_osc_of_dyadic_nonlocal_on_Q0"},
                   {}});
    out.push_back({10, "exponential integrability across K",
                   [&] {
                       ExpintParams p;
                       p.carrier = "product";
                       p.lambda = 0.1;
                       p.K_list = {8, 16};
                       return exp_expint(p, tol);
                   },
                   {"integral_relative_change_first_to_last_K", "tail_decay_rate"},
                   {"integral", "measured_norm"}});
    return out;
}

bool listed(const std::vector<std::string>& names, const std::string& m) {
    for (const auto& n : names)
        if (n == m) return true;
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
    std::ofstream csv;
    if (const char* path = std::getenv("BMO_ACCEPTANCE_CSV")) {
        csv.open(path);
        write_csv_header(csv);
    }

    const Tolerances tol = pinned();
    int failed = 0;
    for (const auto& c : criteria(tol)) {
        if (!pick.empty() && !pick.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<ExperimentRow> rows;
        std::string error;
        try {
            rows = c.run();
        } catch (const Rejection& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (csv.is_open()) write_csv(csv, rows);

        int decided = 0;
        bool ok = error.empty();
        for (const auto& r : rows) {
            if (!listed(c.metrics, r.metric)) continue;
            ++decided;
            ok = ok && r.verdict == Verdict::Pass;
        }
        ok = ok && decided > 0;
        failed += !ok;
        std::printf("criterion %d: %s  %s  (%.1f s)\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), secs);
        if (!error.empty()) std::printf("    rejected: %s\n", error.c_str());
        for (const auto& r : rows) {
            const bool decides = listed(c.metrics, r.metric);
            if (!decides && !listed(c.reported, r.metric)) continue;
            std::printf("    %-8s %s [%s] = %.10g", decides ? to_string(r.verdict).c_str() : "info",
                        r.metric.c_str(), r.params.c_str(), r.value);
            if (r.bound) std::printf("  bound %.10g", *r.bound);
            std::printf("\n");
        }
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failed);
    return failed ? 1 : 0;
}
