// quadrature.hpp — adaptive Gauss-Kronrod integration on finite intervals

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace nmsse {

struct QuadratureError : std::runtime_error {
    double estimate;        // best value at failure
    double error_estimate;  // remaining error bound
    QuadratureError(const std::string& msg, double est, double err)
        : std::runtime_error(msg), estimate(est), error_estimate(err) {}
};

struct QuadratureOptions {
    double abs_tol{1e-12};
    double rel_tol{1e-10};
    int max_intervals{200000};
    int initial_intervals{1};  // pre-split count; raise for oscillatory integrands
};

// Integrates f over [a, b] by adaptive bisection with a 15-point Kronrod rule
// (7-point Gauss embedded). Throws QuadratureError when the interval budget is
// exhausted before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

}  // namespace nmsse
