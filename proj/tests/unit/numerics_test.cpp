#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "clusterxy/error.hpp"
#include "clusterxy/numerics.hpp"

namespace cxy::numerics {
namespace {

TEST(GoldenSection, FindsInteriorMaximum) {
  const ScalarOptimum opt = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  EXPECT_NEAR(opt.x, 0.3, 1e-9);
}

TEST(GoldenSection, ReachesTheBracketEnd) {
  const ScalarOptimum opt = golden_section_maximize([](double x) { return x; }, 0.0, 1.0);
  EXPECT_EQ(opt.x, 1.0);
}

TEST(GridThenGolden, PicksTheGlobalPeak) {
  const auto f = [](double x) { return std::sin(5.0 * x) + 0.3 * x; };
  const ScalarOptimum opt = grid_then_golden_maximize(f, 0.0, 3.0, 64);
  // Local maxima sit at 5x = acos(-0.06) + 2 pi k; the slope favours the last one in [0, 3].
  EXPECT_NEAR(opt.x, (std::acos(-0.06) + 4.0 * std::numbers::pi) / 5.0, 1e-8);
  EXPECT_THROW(grid_then_golden_maximize(f, 0.0, 1.0, 2), Error);
}

TEST(NelderMead, Rosenbrock) {
  const auto f = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  NelderMeadOptions opts;
  opts.f_tol = 1e-16;
  const NelderMeadResult r = nelder_mead_minimize(f, {-1.2, 1.0}, opts);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
  EXPECT_LE(r.evaluations, opts.max_evaluations + 3);
}

TEST(NelderMead, NanIsTreatedAsWorst) {
  const auto f = [](std::span<const double> x) { return x[0] < 0.0 ? std::nan("") : (x[0] - 1.0) * (x[0] - 1.0); };
  const NelderMeadResult r = nelder_mead_minimize(f, {0.5});
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
}

TEST(Quadrature, SmoothAndLogSingularIntegrands) {
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::cos(x); }, 0.0, 1.0).value, std::sin(1.0), 1e-12);
  // int_0^{pi/2} log(sin x) dx = -(pi/2) log 2, with an integrable endpoint singularity.
  const QuadratureResult r =
      integrate_adaptive([](double x) { return std::log(std::sin(x)); }, 0.0, std::numbers::pi / 2.0);
  EXPECT_NEAR(r.value, -std::numbers::pi / 2.0 * std::log(2.0), 1e-9);
}

TEST(Quadrature, NonFiniteResultIsAFailure) {
  try {
    integrate_adaptive([](double) { return std::nan(""); }, 0.0, 1.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::quadrature_failure);
    EXPECT_FALSE(is_validation_error(e.code()));
  }
}

TEST(ScanDerivative, ConstantAndIdentity) {
  const std::vector<double> xs{0.0, 0.1, 0.2, 0.3, 0.4};
  for (double d : scan_derivative(xs, std::vector<double>(5, 3.0))) EXPECT_EQ(d, 0.0);
  for (double d : scan_derivative(xs, xs)) EXPECT_NEAR(d, 1.0, 1e-12);
}

TEST(ScanDerivative, CentralInsideOneSidedAtEnds) {
  const std::vector<double> xs{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> ys{0.0, 1.0, 4.0, 9.0};
  const std::vector<double> d = scan_derivative(xs, ys);
  EXPECT_DOUBLE_EQ(d[0], 1.0);
  EXPECT_DOUBLE_EQ(d[1], 2.0);
  EXPECT_DOUBLE_EQ(d[2], 4.0);
  EXPECT_DOUBLE_EQ(d[3], 5.0);
}

TEST(ScanDerivative, RejectsBadGrids) {
  auto code = [](const std::vector<double>& xs, const std::vector<double>& ys) {
    try {
      scan_derivative(xs, ys);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::invalid_argument;
  };
  EXPECT_EQ(code({0.0, 0.1, 0.3}, {1.0, 2.0, 3.0}), Errc::non_uniform_grid);
  EXPECT_EQ(code({0.0, -0.1, -0.2}, {1.0, 2.0, 3.0}), Errc::non_uniform_grid);
  EXPECT_EQ(code({0.0, 0.1, 0.2}, {1.0, 2.0}), Errc::dimension_mismatch);
  EXPECT_EQ(code({0.0, 0.1}, {1.0, 2.0}), Errc::invalid_argument);
}

}  // namespace
}  // namespace cxy::numerics
