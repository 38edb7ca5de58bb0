#pragma once

#include <functional>

namespace abclab::quadrature {

struct Result {
  double value{0.0};
  double error_estimate{0.0};
  long evaluations{0};
  int max_depth_reached{0};
};

struct Options {
  double rel_tol{1e-12};
  /// Floor for the acceptance threshold, so integrals that are exactly zero converge.
  double abs_tol{0.0};
  int max_depth{40};
};

using Integrand = std::function<double(double)>;

/// Adaptive Simpson with Richardson correction on accepted panels.
/// Throws NumericalError (with interval, depth and estimate) if any panel
/// fails to converge before `max_depth`.
Result adaptive_simpson(const Integrand& f, double a, double b, Options opts = {});

/// Adaptive composite Gauss-Legendre: each panel is integrated with a fixed
/// `points`-point rule and bisected until the panel and its two halves agree.
Result gauss_legendre(const Integrand& f, double a, double b, Options opts = {}, int points = 10);

}  // namespace abclab::quadrature
