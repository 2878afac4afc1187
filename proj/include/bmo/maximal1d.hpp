#pragma once

#include <iosfwd>
#include <vector>

#include "bmo/chord.hpp"
#include "bmo/interval.hpp"
#include "bmo/step_function.hpp"

namespace bmo {

/// Antiderivative of |f| restricted to a window, as vertices at the window
/// edges and every breakpoint inside; F = 0 at the window's left edge.
class ChordEnvelope {
public:
    ChordEnvelope(const StepFunction1D& f, Interval window);

    const std::vector<Vertex>& vertices() const { return v_; }
    Interval window() const { return window_; }
    /// F at an arbitrary point of the window (linear inside cells).
    double at(double x) const;

private:
    std::vector<Vertex> v_;
    std::vector<double> slope_;  // |f| on (v_[i].x, v_[i+1].x)
    Interval window_;
};

/// Uncentered maximal function at x: sup over [a, b] inside `window` with
/// a <= x <= b, a < b, of the average of |f|.
double mhl_point(const StepFunction1D& f, double x, Interval window);

struct MaximalSample {
    double x;
    double value;
};

/// mhl_point at each query; queries must be sorted.
std::vector<MaximalSample> mhl_profile(const StepFunction1D& f, const std::vector<double>& queries,
                                       Interval window);

/// Reference: every candidate pair scored with integrate().
double mhl_brute(const StepFunction1D& f, double x, Interval window);

struct ScaleSplit {
    double local = 0.0;     // intervals of length <= cfactor * |Q0|
    double nonlocal = 0.0;  // intervals of length >= cfactor * |Q0|
};

/// Splits the maximal function at x by interval length. An empty family
/// contributes 0.
ScaleSplit mhl_scale_split(const StepFunction1D& f, double x, Interval Q0, double cfactor,
                           Interval window);

struct DyadicNonlocal {
    double value = 0.0;
    double osc_on_Q0 = 0.0;
};

/// sup over dyadic ancestors of Q0 contained in `window` of the average of f,
/// together with the oscillation of that supremum over Q0.
DyadicNonlocal dyadic_nonlocal(const StepFunction1D& f, Interval Q0, Interval window);

/// True when I = [k 2^m, (k+1) 2^m] for integers k, m.
bool is_dyadic(Interval I);

void write_profile_csv(std::ostream& out, const std::vector<MaximalSample>& rows);

}  // namespace bmo
