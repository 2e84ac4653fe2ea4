#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cxy::numerics {

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a maximum of f on [lo, hi], stopping once the bracket is
/// narrower than x_tol.
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double x_tol = 1e-10);

/// Grid scan with `grid_points` equally spaced points on [lo, hi] (inclusive), then a
/// golden-section refinement around every grid-local maximum. Returns the best point.
ScalarOptimum grid_then_golden_maximize(const std::function<double(double)>& f, double lo, double hi,
                                        int grid_points, double x_tol = 1e-10);

struct NelderMeadOptions {
  double initial_step = 0.25;
  double f_tol = 1e-10;  // spread of simplex values at convergence
  int max_evaluations = 10'000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free downhill simplex minimization.
NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> start, const NelderMeadOptions& options = {});

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b]; the piece with the
/// largest error is bisected, at most max_depth times per branch. Throws
/// quadrature-failure when the error estimate stays above abs_tol.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-9, unsigned max_depth = 30);

/// Same integration without the tolerance check; the caller inspects error_estimate.
QuadratureResult integrate_adaptive_unchecked(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-9, unsigned max_depth = 30);

/// Central differences inside, first-order one-sided differences at both ends.
/// xs must be strictly increasing and uniformly spaced with at least 3 points.
std::vector<double> scan_derivative(std::span<const double> xs, std::span<const double> ys);

}  // namespace cxy::numerics
