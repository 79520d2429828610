// exp_fit.hpp — matrix-pencil fit of sampled kernels by complex exponentials

#pragma once

#include <vector>

#include "nmsse/types.hpp"

namespace nmsse {

struct ExpFitResult {
    ComplexVector nu;  // decay rates, f(t) ~ sum_k d_k exp(-nu_k t)
    ComplexVector d;   // amplitudes
    double residual{0.0};  // max |fit - sample| over the grid
};

// Samples must sit on a uniform time grid; order <= samples/2. Throws when the
// Hankel pencil is rank-deficient below the requested order.
ExpFitResult fit_exponentials(const std::vector<double>& times,
                              const std::vector<Complex>& values, int order);

}  // namespace nmsse
