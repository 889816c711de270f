#pragma once

#include <functional>

namespace eh {

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    long max_evals = 1'000'000;
};

/// Adaptive Gauss-Kronrod (G7/K15) quadrature with interval bisection.
/// Throws QuadratureFailure when the evaluation budget is exhausted
/// before the local error estimates meet the tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

} // namespace eh
