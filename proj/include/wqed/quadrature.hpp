#pragma once

#include <functional>
#include <vector>

#include "wqed/types.hpp"

namespace wqed {

struct QuadratureOptions {
  double rel_tol = 1e-12;
  unsigned max_depth = 22;
};

struct QuadratureResult {
  cplx value;
  double error_estimate = 0.0;
};

// Adaptive Gauss-Kronrod (15-point) integration of a complex integrand over
// [a, b], split at the given interior breakpoints. Integrands with jumps or
// kinks should list those points so each panel is smooth.
QuadratureResult integrate_complex(const std::function<cplx(double)>& f, double a, double b,
                                   std::vector<double> breakpoints = {},
                                   const QuadratureOptions& opt = {});

}  // namespace wqed
