#pragma once

#include <functional>
#include <span>

namespace vcap {

struct QuadratureOptions {
    double rel_tol = 1e-13;
    double abs_tol = 0.0;
    int max_intervals = 4000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  ///< estimated absolute error
    int intervals = 0;
};

using ScalarFn = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. The interval is first split
/// at every breakpoint strictly inside it; kinks of piecewise integrands belong there.
/// The reported error is the sum of |K15 - G7| over the final partition.
QuadResult integrate(const ScalarFn& f, double a, double b, std::span<const double> breakpoints = {},
                     const QuadratureOptions& opts = {});

}  // namespace vcap
