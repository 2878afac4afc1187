#pragma once

#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bmo/grid2d.hpp"
#include "bmo/step_function.hpp"

namespace bmo {

/// Row of equally spaced bump centers: (x0 + i * dx, y) for 0 <= i < count.
/// count is a double so that runs with 2^60 and more centers stay representable.
struct BumpRun {
    double x0 = 0.0;
    double dx = 0.0;
    double count = 1.0;
    double y = 0.0;

    double last() const { return x0 + (count - 1.0) * dx; }
};

/// Minimum x distance between centers for the supports [-1, 1]^2 to stay far
/// apart: 3 * sqrt(2).
inline constexpr double kBumpSpacing = 3.0 * std::numbers::sqrt2;

/// Finite sum of translated separable bumps (log^-|x|)^p (log^-|y|)^q, with an
/// optional clamp of the sum at height M.
class BumpSum2D {
public:
    BumpSum2D(double p, double q, std::vector<BumpRun> runs, std::optional<double> clamp = {});
    static BumpSum2D from_centers(double p, double q, const std::vector<Point2>& centers,
                                  std::optional<double> clamp = {});

    double p() const { return p_; }
    double q() const { return q_; }
    const std::optional<double>& clamp() const { return clamp_; }
    const std::vector<BumpRun>& runs() const { return runs_; }
    double center_count() const;
    /// Distinct centers are at least kBumpSpacing apart in x, so at most one
    /// term is nonzero at any point.
    bool spacing_certified() const { return certified_; }
    /// Smallest x where some bump is nonzero.
    double support_left() const;

    BumpSum2D with_clamp(std::optional<double> clamp) const;

    /// Sum of the overlapping terms, then the clamp.
    double operator()(double x, double y) const;

private:
    double p_, q_;
    std::vector<BumpRun> runs_;
    std::optional<double> clamp_;
    bool certified_ = false;
};

/// Reference evaluation: every center visited (at most 10^7 of them).
double evaluate_naive(const BumpSum2D& g, double x, double y);

/// Integral of min{phi(s) psi(u), M} over [s0, s1] x [u0, u1], phi = (log^-)^p,
/// psi = (log^-)^q, M = +inf when clamp is unset.
double bump_rect_integral(double p, double q, std::optional<double> clamp, double s0, double s1,
                          double u0, double u1);

/// Uniform nx x ny grid over the window with exact cell averages.
GridFunction2D rasterize(const BumpSum2D& g, const Rect& window, std::size_t nx, std::size_t ny);

/// Row through height y over x_window, each bump sampled to step form with the
/// given per-cell error. Rejects a row through an unclamped singular height.
StepFunction1D slice_y(const BumpSum2D& g, double y, Interval x_window, double max_cell_error);

/// M_e1 on the whole line at points left of the support: out[r][k] for row
/// y_rows[r] and abscissa x_queries[k]. Exact up to the bisection that locates
/// tangent points inside a bump.
std::vector<std::vector<double>> directional_maximal_e1(const BumpSum2D& g,
                                                        const std::vector<double>& y_rows,
                                                        const std::vector<double>& x_queries);

/// Lower bound for M_s on the whole plane at points left of the support:
/// rectangles from the query to the right end of the first or last bump of a
/// run, heights from a lattice through the rows and queries, plus the
/// thin-rectangle limit M_e1.
std::vector<std::vector<double>> strong_maximal_lower(const BumpSum2D& g,
                                                      const std::vector<double>& y_rows,
                                                      const std::vector<double>& x_queries);

// Text format: `bumpsum v1 p=<> q=<> clamp=<M|none>`, then one `x_c y_c` line
// per single center and `run x0 dx count y` for longer runs.
void write_text(std::ostream& out, const BumpSum2D& g);
BumpSum2D read_bumpsum_text(std::istream& in);
std::string to_text(const BumpSum2D& g);
BumpSum2D bumpsum_from_text(const std::string& text);

}  // namespace bmo
