#include "clusterxy/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "clusterxy/error.hpp"

namespace cxy::numerics {

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double x_tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > x_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  ScalarOptimum best{fc >= fd ? c : d, std::max(fc, fd)};
  // The bracket ends are never evaluated by the search itself.
  for (double x : {lo, hi}) {
    if (std::abs(x - best.x) <= 2.0 * x_tol) {
      const double fx = f(x);
      if (fx > best.value) best = {x, fx};
    }
  }
  return best;
}

ScalarOptimum grid_then_golden_maximize(const std::function<double(double)>& f, double lo, double hi,
                                        int grid_points, double x_tol) {
  if (grid_points < 3) {
    throw Error(Errc::invalid_argument, "grid search needs at least 3 points");
  }
  const double step = (hi - lo) / (grid_points - 1);
  std::vector<double> xs(static_cast<std::size_t>(grid_points));
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = i + 1 == xs.size() ? hi : lo + step * static_cast<double>(i);
    ys[i] = f(xs[i]);
  }
  ScalarOptimum best{xs[0], ys[0]};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool left_ok = i == 0 || ys[i] >= ys[i - 1];
    const bool right_ok = i + 1 == xs.size() || ys[i] >= ys[i + 1];
    if (!(left_ok && right_ok)) continue;
    const double a = i == 0 ? xs[0] : xs[i - 1];
    const double b = i + 1 == xs.size() ? xs.back() : xs[i + 1];
    ScalarOptimum local = golden_section_maximize(f, a, b, x_tol);
    if (ys[i] > local.value) local = {xs[i], ys[i]};
    if (local.value > best.value) best = local;
  }
  return best;
}

NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> start, const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  if (dim == 0) {
    throw Error(Errc::invalid_argument, "Nelder-Mead needs at least one variable");
  }
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;

  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> idx(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);
  auto point_along = [&](double t, std::vector<double>& out, const std::vector<double>& worst) {
    for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + t * (worst[j] - centroid[j]);
  };

  while (true) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = idx.front();
    const std::size_t worst = idx.back();
    const std::size_t second_worst = idx[dim - 1];

    if (std::abs(values[worst] - values[best]) <= options.f_tol) {
      result.converged = true;
      break;
    }
    if (result.evaluations >= options.max_evaluations) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / static_cast<double>(dim);
    }

    point_along(-kReflect, trial, simplex[worst]);
    const double f_reflect = eval(trial);
    if (f_reflect < values[best]) {
      point_along(-kReflect * kExpand, trial2, simplex[worst]);
      const double f_expand = eval(trial2);
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }
    const bool outside = f_reflect < values[worst];
    point_along(outside ? -kReflect * kContract : kContract, trial2, simplex[worst]);
    const double f_contract = eval(trial2);
    if (f_contract < (outside ? f_reflect : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = f_contract;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        simplex[i][j] = simplex[best][j] + kShrink * (simplex[i][j] - simplex[best][j]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

QuadratureResult integrate_adaptive_unchecked(const std::function<double(double)>& f, double a, double b,
                                              double abs_tol, unsigned max_depth) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  struct Piece {
    double lo, hi, value, error;
    unsigned depth;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  // Boost reports the Kronrod error on [-1, 1]; rescale to the piece width.
  const auto evaluate = [&](double lo, double hi, unsigned depth) {
    double err = 0.0;
    const double value = Rule::integrate(f, lo, hi, 0, 0.0, &err);
    return Piece{lo, hi, value, err * 0.5 * (hi - lo), depth};
  };
  // Global bisection of the worst piece; pieces at max_depth are frozen.
  std::priority_queue<Piece> open;
  std::vector<Piece> frozen;
  open.push(evaluate(a, b, 0));
  constexpr std::size_t kMaxPieces = 20'000;
  double error = open.top().error;
  while (!open.empty() && error > abs_tol && open.size() + frozen.size() < kMaxPieces) {
    const Piece worst = open.top();
    open.pop();
    if (worst.depth >= max_depth || !std::isfinite(worst.error)) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Piece left = evaluate(worst.lo, mid, worst.depth + 1);
    const Piece right = evaluate(mid, worst.hi, worst.depth + 1);
    error += left.error + right.error - worst.error;
    open.push(left);
    open.push(right);
  }
  QuadratureResult out;
  for (const Piece& p : frozen) out.value += p.value, out.error_estimate += p.error;
  for (; !open.empty(); open.pop()) out.value += open.top().value, out.error_estimate += open.top().error;
  return out;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                    unsigned max_depth) {
  const QuadratureResult out = integrate_adaptive_unchecked(f, a, b, abs_tol, max_depth);
  if (!std::isfinite(out.value) || out.error_estimate > abs_tol) {
    throw Error(Errc::quadrature_failure, "adaptive quadrature did not reach tolerance (error estimate " +
                                              std::to_string(out.error_estimate) + ")");
  }
  return out;
}

std::vector<double> scan_derivative(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(Errc::dimension_mismatch, "x and y series differ in length");
  }
  if (xs.size() < 3) {
    throw Error(Errc::invalid_argument, "derivative needs at least 3 points");
  }
  const double step = xs[1] - xs[0];
  if (!(step > 0.0)) {
    throw Error(Errc::non_uniform_grid, "x values must be strictly increasing");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double d = xs[i] - xs[i - 1];
    if (!(d > 0.0) || std::abs(d - step) > 1e-6 * step) {
      throw Error(Errc::non_uniform_grid, "x values are not uniformly spaced");
    }
  }
  const std::size_t n = xs.size();
  std::vector<double> out(n);
  out[0] = (ys[1] - ys[0]) / (xs[1] - xs[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (ys[i + 1] - ys[i - 1]) / (xs[i + 1] - xs[i - 1]);
  out[n - 1] = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
  return out;
}

}  // namespace cxy::numerics
