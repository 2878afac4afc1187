#pragma once

#include <optional>
#include <vector>

#include "bmo/bumpsum.hpp"
#include "bmo/interval.hpp"
#include "bmo/step_function.hpp"

namespace bmo {

/// g_n = H_n (1 - chi_[c,0]) / (1 + ln n), H_n the even 2n-periodic extension
/// of log^+ on [0, n]. Cell values are exact cell averages; the per-cell
/// oscillation of g_n is at most max_cell_error.
StepFunction1D build_gn(double n, double c, double max_cell_error, Interval window);

/// Closed form of the average of g_n over [0, n]: (n ln n - n + 1) / (n (1 + ln n)).
double gn_average_closed_form(double n);

/// Threshold ((c - 1) / c) ln(1 + c / (c - 1)) that a = int f must exceed.
double discontinuity_threshold(double c);

struct DiscontinuityInstance {
    StepFunction1D f;
    double a = 0.0;
    double c = 0.0;
    double n = 0.0;
    StepFunction1D g_n;
    StepFunction1D f_n;  // f + (a / (1 - c)) g_n
    Interval window;     // [4c, 2n]
};

/// Checks the hypotheses on f and (a, c) and assembles g_n and f_n on [4c, 2n].
DiscontinuityInstance build_instance(const StepFunction1D& f, double c, double n,
                                     double max_cell_error);

/// Lattice of bumps: for k = 0..N the run of 2^k centers (3 sqrt 2 m, k / N),
/// m = 2^k..2^(k+1) - 1.
BumpSum2D build_gN2d(int N, double p, double q, std::optional<double> clamp = {});

/// First `count` rationals of [0, 2] in Stern-Brocot order: 0, 1, 2, then the
/// mediants of neighbours level by level, left to right.
std::vector<double> stern_brocot_rationals(int count);

/// Centers (3 sqrt 2 m, r_m), m = 1..count, r_m from stern_brocot_rationals.
BumpSum2D build_h_rational(int count, double p, double q);

struct ClampPolicy {
    double height;     // N'
    double cell_size;  // raster cell size h used for the bump scale
    double floor;      // (ln N)^q, smallest accepted height
};

/// N' = ceil(2 (ln N)^q (ln(1/h))^(p+q)): twice the row weight times the bump
/// peak resolved by cells of size h.
ClampPolicy clamp_policy(int N, double p, double q, double cell_size);

/// Rejects heights below (ln N)^q.
void check_clamp(int N, double q, double height);

}  // namespace bmo
