#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bmo/interval.hpp"
#include "bmo/step_function.hpp"

namespace bmo {

enum class OscMode { L1, L2 };

std::string to_string(OscMode m);
OscMode parse_mode(const std::string& text);

/// Result of a supremum search over an interval (or rectangle) family.
struct OscillationReport {
    std::string family;
    Interval window;
    int refinement_level = 0;
    OscMode mode = OscMode::L1;
    double delta = 0.0;  // length cap, 0 when the family is uncapped
    double value = 0.0;
    Interval argmax;
    // Second axis for 2D families.
    std::optional<Interval> window_y;
    std::optional<Interval> argmax_y;
    std::size_t candidates = 0;
    std::size_t exact_evaluations = 0;
};

void write_report_csv_header(std::ostream& out, bool two_d = false);
void write_report_csv(std::ostream& out, const OscillationReport& r);

double average(const StepFunction1D& f, Interval I);

/// L1: (1/|I|) int_I |f - f_I|. L2: sqrt(avg f^2 - (avg f)^2), both by cell scan.
double mean_osc(const StepFunction1D& f, Interval I, OscMode mode = OscMode::L1);

/// Mean oscillation over a union of pairwise non-overlapping intervals.
double mean_osc(const StepFunction1D& f, const std::vector<Interval>& A,
                OscMode mode = OscMode::L1);

/// Candidate endpoints: window edges, breakpoints inside the window and the
/// uniform grid lo + i * |window| 2^-level. Grids of successive levels nest exactly.
std::vector<double> candidate_points(const StepFunction1D& f, Interval window, int level);

/// sup of mean_osc over intervals with candidate endpoints.
OscillationReport bmo_norm_1d(const StepFunction1D& f, Interval window, int refinement_level,
                              OscMode mode = OscMode::L1);

/// sup of mean_osc over candidate intervals of length <= delta. The grid
/// spacing must be at most delta / 8.
OscillationReport omega(const StepFunction1D& f, double delta, Interval window,
                        int refinement_level, OscMode mode = OscMode::L1);

/// sup of mean_osc over [a, a + len] inside the window, a taken from `starts`.
OscillationReport fixed_length_osc(const StepFunction1D& f, double len,
                                   const std::vector<double>& starts, Interval window,
                                   OscMode mode = OscMode::L1);

/// Exhaustive reference for bmo_norm_1d: exact score for every candidate pair.
OscillationReport bmo_norm_1d_exhaustive(const StepFunction1D& f, Interval window,
                                         int refinement_level, OscMode mode = OscMode::L1);

struct SubsetOsc {
    double value;     // (1/|A|) int_A |f - f_Q|
    double jn_bound;  // 1 + ln(|Q| / |A|)
};

SubsetOsc subset_osc(const StepFunction1D& f, Interval Q, const std::vector<Interval>& A);

/// Mean oscillation of equally weighted samples.
double discrete_mean_osc(const std::vector<double>& samples);

}  // namespace bmo
