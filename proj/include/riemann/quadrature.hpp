#pragma once

#include <functional>

#include "riemann/types.hpp"

namespace riemann {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-13;
  int max_subintervals = 1 << 16;
};

struct QuadratureResult {
  CVec3 value = CVec3::Zero();
  double error = 0.0;
  int subintervals = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of a complex 3-vector valued
/// function over [a, b]. Refines the interval with the largest error estimate
/// until the total estimate drops below max(abs_tol, rel_tol * |value|, 50 eps
/// times the integral of |f|).
/// Throws QuadratureFailure when the subinterval cap is reached first.
QuadratureResult gauss_kronrod(const std::function<CVec3(double)>& f, double a, double b,
                               const QuadratureOptions& opts = {});

}  // namespace riemann
