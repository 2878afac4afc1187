#pragma once

#include "bmo/interval.hpp"
#include "bmo/step_function.hpp"

namespace bmo {

/// Even, T-periodic function generated by a step function on [0, T/2].
struct PeriodicExtension1D {
    StepFunction1D base;  // re-expressed on exactly [0, T/2]
    double period;

    /// Folds x into [0, T/2] and evaluates the base there.
    double operator()(double x) const;
};

/// Rejects when h is nonzero somewhere outside [0, T/2].
PeriodicExtension1D periodic_even_extend(const StepFunction1D& h, double T);

/// Step representation of H on `window`, built half-period by half-period.
StepFunction1D materialize(const PeriodicExtension1D& H, Interval window);

}  // namespace bmo
