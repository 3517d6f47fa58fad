#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace treecount {

struct QuadratureOptions {
  double abs_tol = 1e-13;
  double rel_tol = 0.0;
  std::size_t max_evaluations = 2'000'000;
};

struct QuadratureResult {
  double value = 0.0;
  /// Sum over panels of |K15 - G7|, a conservative estimate for smooth integrands.
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 15-point Gauss–Kronrod quadrature over the partition
/// given by `breakpoints` (at least two, increasing). The worst panel is
/// bisected until the total error estimate meets max(abs_tol, rel_tol·|value|)
/// or the evaluation budget runs out; `converged` tells which.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, std::span<const double> breakpoints,
                                    const QuadratureOptions& options = {});

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options = {});

}  // namespace treecount
