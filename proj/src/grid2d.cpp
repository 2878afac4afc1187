#include "bmo/grid2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "bmo/error.hpp"

namespace bmo {

double Rect::eccentricity() const {
    const double a = x.length(), b = y.length();
    return std::max(a, b) / std::min(a, b);
}

std::string to_string(const Rect& r) { return to_string(r.x) + " x " + to_string(r.y); }

namespace {

void check_edges(const std::vector<double>& e, const char* axis) {
    if (e.size() < 2) reject(std::string(axis) + " edges need at least two entries");
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!std::isfinite(e[i])) reject(std::string(axis) + " edge is not finite");
        if (i > 0 && !(e[i] > e[i - 1])) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "%s edges not strictly increasing at index %zu", axis, i);
            reject(buf);
        }
    }
}

// Index of the cell containing x, with x clamped into the span.
std::size_t cell_of(const std::vector<double>& e, double x) {
    if (x <= e.front()) return 0;
    if (x >= e.back()) return e.size() - 2;
    return static_cast<std::size_t>(std::upper_bound(e.begin(), e.end(), x) - e.begin()) - 1;
}

}  // namespace

GridFunction2D::GridFunction2D(std::vector<double> x_edges, std::vector<double> y_edges,
                               std::vector<double> values)
    : x_edges_(std::move(x_edges)), y_edges_(std::move(y_edges)), values_(std::move(values)) {
    check_edges(x_edges_, "x");
    check_edges(y_edges_, "y");
    if (values_.size() != nx() * ny()) reject("grid value count does not match nx * ny");
    for (double v : values_)
        if (!std::isfinite(v)) reject("grid value is not finite");
}

GridFunction2D GridFunction2D::uniform(Rect span, std::size_t nx, std::size_t ny,
                                       const std::function<double(std::size_t, std::size_t)>& fn) {
    if (span.degenerate()) reject("grid span is empty");
    if (nx == 0 || ny == 0) reject("grid needs at least one cell per axis");
    std::vector<double> xe(nx + 1), ye(ny + 1), v(nx * ny);
    for (std::size_t i = 0; i <= nx; ++i)
        xe[i] = i == nx ? span.x.hi : span.x.lo + span.x.length() * static_cast<double>(i) / nx;
    for (std::size_t j = 0; j <= ny; ++j)
        ye[j] = j == ny ? span.y.hi : span.y.lo + span.y.length() * static_cast<double>(j) / ny;
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) v[j * nx + i] = fn(i, j);
    return GridFunction2D(std::move(xe), std::move(ye), std::move(v));
}

double GridFunction2D::operator()(double x, double y) const {
    if (x < x_edges_.front() || x >= x_edges_.back()) return 0.0;
    if (y < y_edges_.front() || y >= y_edges_.back()) return 0.0;
    return at(cell_of(x_edges_, x), cell_of(y_edges_, y));
}

GridFunction2D abs(const GridFunction2D& g) {
    auto v = g.values();
    for (double& x : v) x = std::abs(x);
    return GridFunction2D(g.x_edges(), g.y_edges(), std::move(v));
}

double integrate(const GridFunction2D& g, const Rect& R) {
    if (R.degenerate()) reject("integral over a degenerate rectangle");
    double s = 0.0;
    for_each_cell_piece(g, R, [&](double v, double a) { s += v * a; });
    return s;
}

namespace {

std::size_t row_of(const std::vector<double>& e, double y, const char* what) {
    auto it = std::lower_bound(e.begin(), e.end(), y);
    if (it != e.end() && *it == y) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%s = %.17g lies on a grid edge", what, y);
        reject(buf);
    }
    return static_cast<std::size_t>(it - e.begin());  // 0 or size: outside
}

}  // namespace

StepFunction1D slice_y(const GridFunction2D& g, double y) {
    const auto& ye = g.y_edges();
    std::size_t k = row_of(ye, y, "y");
    Interval span{g.x_edges().front(), g.x_edges().back()};
    if (k == 0 || k == ye.size()) return StepFunction1D::zero(span);
    const std::size_t j = k - 1;
    std::vector<double> v(g.nx());
    for (std::size_t i = 0; i < g.nx(); ++i) v[i] = g.at(i, j);
    return StepFunction1D(g.x_edges(), std::move(v));
}

StepFunction1D slice_x(const GridFunction2D& g, double x) {
    const auto& xe = g.x_edges();
    std::size_t k = row_of(xe, x, "x");
    Interval span{g.y_edges().front(), g.y_edges().back()};
    if (k == 0 || k == xe.size()) return StepFunction1D::zero(span);
    const std::size_t i = k - 1;
    std::vector<double> v(g.ny());
    for (std::size_t j = 0; j < g.ny(); ++j) v[j] = g.at(i, j);
    return StepFunction1D(g.y_edges(), std::move(v));
}

void write_text(std::ostream& out, const GridFunction2D& g) {
    char buf[32];
    out << "grid2d v1 nx=" << g.nx() << " ny=" << g.ny() << '\n';
    auto line = [&](const std::vector<double>& xs, std::size_t from, std::size_t count) {
        for (std::size_t k = 0; k < count; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", xs[from + k]);
            if (k) out << ' ';
            out << buf;
        }
        out << '\n';
    };
    line(g.x_edges(), 0, g.x_edges().size());
    line(g.y_edges(), 0, g.y_edges().size());
    for (std::size_t j = 0; j < g.ny(); ++j) line(g.values(), j * g.nx(), g.nx());
}

GridFunction2D read_grid_text(std::istream& in) {
    std::string magic, version, sx, sy;
    if (!(in >> magic >> version >> sx >> sy) || magic != "grid2d" || version != "v1" ||
        sx.rfind("nx=", 0) != 0 || sy.rfind("ny=", 0) != 0)
        reject("expected header 'grid2d v1 nx=<> ny=<>'");
    std::size_t nx = 0, ny = 0;
    try {
        nx = std::stoull(sx.substr(3));
        ny = std::stoull(sy.substr(3));
    } catch (const std::exception&) {
        reject("bad grid dimensions in header");
    }
    if (nx == 0 || ny == 0) reject("grid needs at least one cell per axis");
    std::vector<double> xe(nx + 1), ye(ny + 1), v(nx * ny);
    for (double& x : xe)
        if (!(in >> x)) reject("truncated x edges");
    for (double& y : ye)
        if (!(in >> y)) reject("truncated y edges");
    for (double& z : v)
        if (!(in >> z)) reject("truncated grid values");
    return GridFunction2D(std::move(xe), std::move(ye), std::move(v));
}

std::string to_text(const GridFunction2D& g) {
    std::ostringstream out;
    write_text(out, g);
    return out.str();
}

GridFunction2D grid_from_text(const std::string& text) {
    std::istringstream in(text);
    return read_grid_text(in);
}

}  // namespace bmo
