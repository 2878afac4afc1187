#pragma once

#include <optional>
#include <vector>

#include "bmo/grid2d.hpp"
#include "bmo/oscillation.hpp"
#include "bmo/step_function.hpp"

namespace bmo {

/// M_e1 row by row: out[r][k] = mhl of the row through y_rows[r] at x_queries[k]
/// (x_queries sorted, inside x_window).
std::vector<std::vector<double>> directional_maximal_e1(const GridFunction2D& g,
                                                        const std::vector<double>& y_rows,
                                                        const std::vector<double>& x_queries,
                                                        Interval x_window);

/// Strong maximal function: sup of the average of |g| over rectangles inside
/// `window` that contain the query, corners on grid edges, window edges and the
/// query coordinates. With ecc_cap set only rectangles of eccentricity at most
/// the cap are admitted.
std::vector<double> strong_maximal(const GridFunction2D& g, const std::vector<Point2>& queries,
                                   const Rect& window, std::optional<double> ecc_cap = {});

/// Reference for strong_maximal: every candidate rectangle, integrals from
/// running column sums instead of prefix tables.
double strong_maximal_naive(const GridFunction2D& g, Point2 query, const Rect& window,
                            std::optional<double> ecc_cap = {});

/// (1/|R|) int_R |g - g_R| (L1) or the standard deviation over R (L2).
double mean_osc_2d(const GridFunction2D& g, const Rect& R, OscMode mode = OscMode::L1);

struct RectFamily {
    enum Kind { Squares, Rects } kind = Squares;
    double ecc_cap = 0.0;  // Rects only; 0 means uncapped

    static RectFamily squares() { return {Squares, 0.0}; }
    static RectFamily rects(double cap = 0.0) { return {Rects, cap}; }
};

/// sup of mean_osc_2d over the family with corners on grid edges inside the
/// window and the uniform 2^level grid per axis. Squares use one corner from
/// each candidate axis list and a side realized on either axis.
OscillationReport bmo_norm_2d(const GridFunction2D& g, const Rect& window, RectFamily family,
                              int refinement_level, OscMode mode = OscMode::L1);

/// Exact score for every candidate of bmo_norm_2d.
OscillationReport bmo_norm_2d_exhaustive(const GridFunction2D& g, const Rect& window,
                                         RectFamily family, int refinement_level,
                                         OscMode mode = OscMode::L1);

struct SeparableRow {
    double delta;
    double avg_phi, osc_phi;
    double avg_psi, osc_psi;
    double value;  // avg_phi * osc_psi + osc_phi * avg_psi
};

struct SeparableNorm {
    double value = 0.0;
    double best_delta = 0.0;
    std::vector<SeparableRow> rows;
};

/// max over delta of [sup avg|phi| * sup O(psi) + sup O(phi) * sup avg|psi|],
/// sups over intervals of length delta inside the respective windows.
SeparableNorm product_separable_norm(const StepFunction1D& phi, const StepFunction1D& psi,
                                     const std::vector<double>& delta_grid, const Rect& window);

struct SliceDecomposition {
    double lhs;  // O(g, A x B)
    double rhs;  // avg_B O(g_y, A) + avg_A O(g_x, B)
};

SliceDecomposition slice_osc_decomposition(const GridFunction2D& g, const std::vector<Interval>& A,
                                           const std::vector<Interval>& B);

}  // namespace bmo
