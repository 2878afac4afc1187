#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "bmo/interval.hpp"
#include "bmo/step_function.hpp"

namespace bmo {

/// Axis-parallel rectangle I x J.
struct Rect {
    Interval x;
    Interval y;

    double area() const { return x.length() * y.length(); }
    double eccentricity() const;
    bool degenerate() const { return x.degenerate() || y.degenerate(); }
    bool contains(double px, double py) const { return x.contains(px) && y.contains(py); }
    bool contains(const Rect& r) const { return x.contains(r.x) && y.contains(r.y); }
};

std::string to_string(const Rect& r);

struct Point2 {
    double x;
    double y;
};

/// Piecewise-constant function on a rectangular grid, zero outside the span.
/// Cell (i, j) is (x_edges[i], x_edges[i+1]) x (y_edges[j], y_edges[j+1]);
/// values are stored row by row: values[j * nx + i].
class GridFunction2D {
public:
    GridFunction2D(std::vector<double> x_edges, std::vector<double> y_edges,
                   std::vector<double> values);

    /// Uniform nx x ny grid over `span` with cell (i, j) set to fn(i, j).
    static GridFunction2D uniform(Rect span, std::size_t nx, std::size_t ny,
                                  const std::function<double(std::size_t, std::size_t)>& fn);

    std::size_t nx() const { return x_edges_.size() - 1; }
    std::size_t ny() const { return y_edges_.size() - 1; }
    const std::vector<double>& x_edges() const { return x_edges_; }
    const std::vector<double>& y_edges() const { return y_edges_; }
    const std::vector<double>& values() const { return values_; }
    double at(std::size_t i, std::size_t j) const { return values_[j * nx() + i]; }
    Rect span() const { return {{x_edges_.front(), x_edges_.back()}, {y_edges_.front(), y_edges_.back()}}; }

    /// Right-continuous point value, zero outside the span.
    double operator()(double x, double y) const;

private:
    std::vector<double> x_edges_;
    std::vector<double> y_edges_;
    std::vector<double> values_;
};

GridFunction2D abs(const GridFunction2D& g);

/// Exact integral over a rectangle (partial cells weighted by overlap).
double integrate(const GridFunction2D& g, const Rect& R);

/// Row through height y as a step function over the x span. Rejects when y
/// lies exactly on a grid edge; rows outside the y span are the zero function.
StepFunction1D slice_y(const GridFunction2D& g, double y);
/// Column through abscissa x, same conventions as slice_y.
StepFunction1D slice_x(const GridFunction2D& g, double x);

/// Calls fn(value, area) for the cell pieces covering R, row by row from the
/// bottom and left to right within a row; the part of R outside the span is
/// reported last as a single zero piece.
template <class Fn>
void for_each_cell_piece(const GridFunction2D& g, const Rect& R, Fn&& fn) {
    const auto& xe = g.x_edges();
    const auto& ye = g.y_edges();
    const double ox = overlap(R.x, {xe.front(), xe.back()});
    const double oy = overlap(R.y, {ye.front(), ye.back()});
    if (ox > 0.0 && oy > 0.0) {
        auto first = [](const std::vector<double>& e, double t) -> std::size_t {
            if (t <= e.front()) return 0;
            return static_cast<std::size_t>(std::upper_bound(e.begin(), e.end(), t) - e.begin()) - 1;
        };
        const std::size_t i0 = first(xe, R.x.lo), j0 = first(ye, R.y.lo);
        const std::size_t nx = g.nx();
        const double* v = g.values().data();
        for (std::size_t j = j0; j < g.ny() && ye[j] < R.y.hi; ++j) {
            const double h = std::min(ye[j + 1], R.y.hi) - std::max(ye[j], R.y.lo);
            for (std::size_t i = i0; i < nx && xe[i] < R.x.hi; ++i)
                fn(v[j * nx + i], (std::min(xe[i + 1], R.x.hi) - std::max(xe[i], R.x.lo)) * h);
        }
    }
    const double rest = R.area() - ox * oy;
    if (rest > 0.0) fn(0.0, rest);
}

// Text format: `grid2d v1 nx=<> ny=<>`, x_edges line, y_edges line, then the
// values row by row (one line per row, bottom row first).
void write_text(std::ostream& out, const GridFunction2D& g);
GridFunction2D read_grid_text(std::istream& in);
std::string to_text(const GridFunction2D& g);
GridFunction2D grid_from_text(const std::string& text);

}  // namespace bmo
