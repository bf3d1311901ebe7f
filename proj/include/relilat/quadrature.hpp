#ifndef RELILAT_QUADRATURE_HPP
#define RELILAT_QUADRATURE_HPP

#include <functional>

namespace relilat {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
};

/// Globally adaptive 21-point Gauss–Kronrod integration of f over [a, b] (QAG strategy:
/// repeatedly bisect the interval with the largest error estimate). Throws
/// NonconvergenceError when `max_subdivisions` bisections do not reach `abs_tol`.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           int max_subdivisions);

/// Integral of f over [c, ∞) through t = c + u / (1 - u), u ∈ [0, 1). Throws
/// NonconvergenceError if the mapped integrand has not decayed below `decay_tol` near u = 1.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double c, double abs_tol,
                                       int max_subdivisions, double decay_tol = 1e-12);

}  // namespace relilat

#endif  // RELILAT_QUADRATURE_HPP
