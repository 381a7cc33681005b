#pragma once

#include <functional>

namespace rdual {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_intervals = 2000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [lo, hi].
/// Always bisects the interval with the largest error estimate; throws
/// QuadratureNonConvergence when the interval budget runs out.
QuadratureResult integrate_gauss_kronrod(const std::function<double(double)>& f, double lo, double hi,
                                         const QuadratureOptions& opts = {});

}  // namespace rdual
