#pragma once

#include <functional>
#include <vector>

#include "bmo/interval.hpp"
#include "bmo/step_function.hpp"

namespace bmo {

/// A real profile plus the metadata needed to turn it into a step function
/// with a guaranteed per-cell error.
struct Sampler1D {
    std::function<double(double)> evaluator;
    /// Optional closed-form antiderivative; cell averages fall back to
    /// adaptive quadrature when empty.
    std::function<double(double)> antiderivative;
    /// Intervals (possibly unbounded) on which the evaluator is monotone.
    /// Empty means monotone on the whole line.
    std::vector<Interval> monotone_pieces;
    /// Points where the evaluator is unbounded. Sampling stops this close to them
    /// and closes the gap with a single cell carrying the exact average.
    std::vector<double> singular_points;
    double singular_floor = 1e-12;
};

/// Step approximation of `s` on `window` whose value on each cell is the cell
/// average and whose oscillation within each cell (away from singular points)
/// is at most `max_cell_error`.
StepFunction1D sample_to_step(const Sampler1D& s, Interval window, double max_cell_error);

namespace profiles {

Sampler1D constant(double value);
Sampler1D identity();
Sampler1D indicator(Interval support, double height = 1.0);
/// Indicator of [0, inf).
Sampler1D heaviside();
/// max{0, ln|x|}.
Sampler1D log_plus();
/// ln|x|, singular at 0.
Sampler1D log_abs();
/// (max{0, -ln|x|})^p, singular at 0, supported in [-1, 1].
Sampler1D log_minus_pow(double p);
/// min{w * (log^-|x|)^p, M}: one clamped bump row. w >= 0, M > 0.
Sampler1D clamped_bump(double p, double w, double M);

}  // namespace profiles

// Closed forms shared with the 2D code.

/// (max{0, -ln|x|})^p.
double log_minus_pow(double x, double p);
/// Odd antiderivative of log_minus_pow, vanishing at 0; equals Gamma(p+1) for x >= 1.
double log_minus_pow_integral(double x, double p);
/// Radius of the set where w * (log^-|x|)^p exceeds M (0 when w == 0).
double clamp_core_radius(double p, double w, double M);
/// Odd antiderivative of min{w * (log^-|x|)^p, M}, vanishing at 0.
double clamped_bump_integral(double x, double p, double w, double M);

}  // namespace bmo
