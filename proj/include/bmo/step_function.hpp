#pragma once

#include <algorithm>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "bmo/interval.hpp"

namespace bmo {

/// Piecewise-constant function on the real line.
///
/// Cell i is the open interval (breakpoints[i], breakpoints[i+1]) and carries
/// values[i]. The function is zero outside [breakpoints.front(), breakpoints.back()].
/// Point evaluation is right-continuous; every quantity computed by the library
/// is an integral, so the value at a breakpoint never matters.
class StepFunction1D {
public:
    StepFunction1D(std::vector<double> breakpoints, std::vector<double> values);

    static StepFunction1D constant(double value, Interval span);
    static StepFunction1D indicator(Interval support, double height = 1.0);
    /// Zero function represented by a single cell over `span`.
    static StepFunction1D zero(Interval span);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t cells() const { return values_.size(); }
    Interval span() const { return {breakpoints_.front(), breakpoints_.back()}; }
    Interval cell(std::size_t i) const { return {breakpoints_[i], breakpoints_[i + 1]}; }

    double operator()(double x) const;

    /// Index of the cell containing x (right-continuous), or npos outside the span.
    std::size_t locate(double x) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// Adjacent cells with equal values merged.
    StepFunction1D merged() const;

    /// Same function re-expressed on exactly `window`: cells clipped to it and
    /// zero cells padded where the span does not reach.
    StepFunction1D restricted(Interval window) const;

    /// Exact equality after merging equal neighbours and trimming zero cells at
    /// either end. This is an equivalence relation (bitwise comparison of the
    /// canonical forms).
    friend bool operator==(const StepFunction1D& a, const StepFunction1D& b);

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

/// Equality within `rel_tol` on breakpoints and values after canonicalisation.
bool approx_equal(const StepFunction1D& a, const StepFunction1D& b, double rel_tol = 1e-9);

// Cell-wise algebra. Binary operations work on the union refinement of the
// two breakpoint sets.
StepFunction1D add(const StepFunction1D& f, const StepFunction1D& g);
StepFunction1D subtract(const StepFunction1D& f, const StepFunction1D& g);
StepFunction1D scale(const StepFunction1D& f, double alpha);
StepFunction1D abs(const StepFunction1D& f);
/// max{-height, min{f, height}}; height must be positive.
StepFunction1D clamp(const StepFunction1D& f, double height);
/// f with its values replaced by zero on `where`.
StepFunction1D mask_zero(const StepFunction1D& f, Interval where);

/// Exact integral over [a, b], summed left to right over the cells.
double integrate(const StepFunction1D& f, double a, double b);

/// Calls fn(value, width) for the pieces of f covering [a, b] from left to
/// right, including the zero pieces outside the span.
template <class Fn>
void for_each_piece(const StepFunction1D& f, double a, double b, Fn&& fn) {
    const auto& bp = f.breakpoints();
    const auto& v = f.values();
    if (a < bp.front()) fn(0.0, std::min(bp.front(), b) - a);
    if (b > bp.front() && a < bp.back()) {
        std::size_t i = a < bp.front() ? 0 : f.locate(a);
        for (; i < v.size() && bp[i] < b; ++i)
            fn(v[i], std::min(bp[i + 1], b) - std::max(bp[i], a));
    }
    if (b > bp.back()) fn(0.0, b - std::max(bp.back(), a));
}

// Text format: header `stepfn v1 n=<cells>`, then x0, then one `x_i v_i` line per cell.
void write_text(std::ostream& out, const StepFunction1D& f);
StepFunction1D read_text(std::istream& in);
std::string to_text(const StepFunction1D& f);
StepFunction1D from_text(const std::string& text);

}  // namespace bmo
