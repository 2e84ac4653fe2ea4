#include "clusterxy/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "clusterxy/error.hpp"
#include "clusterxy/freefermion.hpp"
#include "clusterxy/numerics.hpp"

namespace cxy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct LogProduct {
  double log2_abs = 0.0;
  bool negative = false;

  void multiply(double factor) {
    if (factor < 0.0) negative = !negative;
    log2_abs += factor == 0.0 ? -kInf : std::log2(std::abs(factor));
  }
  double value() const {
    const double mag = std::exp2(log2_abs);
    return negative ? -mag : mag;
  }
};

void require_sites(std::span<const double> angles, int sites) {
  if (sites < 2 || sites % 2 != 0) {
    throw Error(Errc::odd_sites, "product-state overlaps need an even number of sites");
  }
  if (angles.size() != static_cast<std::size_t>(sites / 2)) {
    throw Error(Errc::dimension_mismatch, "expected " + std::to_string(sites / 2) + " angles, got " +
                                              std::to_string(angles.size()));
  }
}

LogProduct site_overlap(std::span<const double> angles, double xi, int sites) {
  require_sites(angles, sites);
  const double u = std::cos(0.5 * xi) * std::cos(0.5 * xi);
  const double v = std::sin(0.5 * xi) * std::sin(0.5 * xi);
  LogProduct p;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double cot = 1.0 / std::tan(kPi * (static_cast<double>(k) + 0.5) / sites);
    p.multiply(std::cos(angles[k]) * u + std::sin(angles[k]) * v * cot);
  }
  return p;
}

// Factor a^2 A + d^2 D + (b^2 + c^2) P + bc Q + ad R for one momentum pair, with
// mu = 2 pi (k + 1/2) / N, theta = theta(mu), theta' = theta(pi - mu).
struct BlockCoefficients {
  double A, D, P, Q, R;

  static BlockCoefficients make(double theta, double theta_mirror, double mu) {
    const double cot = std::cos(mu) / std::sin(mu);
    const double s_plus = std::sin(theta + theta_mirror);
    return {std::cos(theta) * std::cos(theta_mirror), std::sin(theta) * std::sin(theta_mirror),
            0.5 * cot * std::sin(theta - theta_mirror), cot * std::cos(mu) * s_plus, std::sin(mu) * s_plus};
  }
  double operator()(const BlockAnsatz& s) const {
    return A * s.a * s.a + D * s.d * s.d + P * (s.b * s.b + s.c * s.c) + Q * s.b * s.c + R * s.a * s.d;
  }
};

// Precomputed block-overlap factors of one finite chain.
class BlockKernel {
 public:
  BlockKernel(std::span<const double> angles, int sites) {
    require_sites(angles, sites);
    const int half = sites / 2;
    for (int k = 0; 2 * k < half - 1; ++k) {
      const double mu = 2.0 * kPi * (k + 0.5) / sites;
      pairs_.push_back(BlockCoefficients::make(angles[static_cast<std::size_t>(k)],
                                               angles[static_cast<std::size_t>(half - k - 1)], mu));
    }
    if (half % 2 == 1) {
      const double theta_mid = angles[static_cast<std::size_t>((half - 1) / 2)];
      middle_ = {std::cos(theta_mid), std::sin(theta_mid)};
      has_middle_ = true;
    }
  }

  LogProduct log_overlap(const BlockAnsatz& s) const {
    LogProduct p;
    for (const BlockCoefficients& c : pairs_) p.multiply(c(s));
    if (has_middle_) p.multiply(s.a * middle_[0] + s.d * middle_[1]);
    return p;
  }

 private:
  std::vector<BlockCoefficients> pairs_;
  std::array<double, 2> middle_{1.0, 0.0};
  bool has_middle_ = false;
};

// Hyperspherical coordinates of the unit 3-sphere.
BlockAnsatz from_sphere(std::span<const double> t) {
  const double s1 = std::sin(t[0]);
  const double s2 = std::sin(t[1]);
  return {std::cos(t[0]), s1 * std::cos(t[1]), s1 * s2 * std::cos(t[2]), s1 * s2 * std::sin(t[2])};
}

std::vector<double> to_sphere(const BlockAnsatz& raw) {
  const BlockAnsatz s = raw.normalized();
  return {std::acos(std::clamp(s.a, -1.0, 1.0)), std::atan2(std::hypot(s.c, s.d), s.b), std::atan2(s.d, s.c)};
}

EntanglementResult finish(double log2_lambda, int sites, EntanglementMode mode) {
  EntanglementResult r;
  r.sites = sites;
  r.mode = mode;
  r.lambda_max = std::exp2(log2_lambda);
  r.eg_total = -2.0 * log2_lambda;
  r.density = r.eg_total / sites;
  return r;
}

struct StartSearch {
  BlockAnsatz best;
  double value = kInf;  // minimized objective
};

// Multi-start Nelder-Mead over the 3-sphere followed by a short polish from the best point.
StartSearch minimize_on_sphere(const std::function<double(const BlockAnsatz&)>& objective,
                               std::span<const BlockAnsatz> starts, int random_starts, double f_tol) {
  auto on_angles = [&](std::span<const double> t) { return objective(from_sphere(t)); };
  std::vector<BlockAnsatz> all(starts.begin(), starts.end());
  all.push_back({1.0, 0.0, 0.0, 0.0});
  all.push_back({0.0, 1.0, 0.0, 0.0});
  all.push_back({0.0, 0.0, 1.0, 0.0});
  all.push_back({0.0, 0.0, 0.0, 1.0});
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < random_starts; ++i) all.push_back(BlockAnsatz{gauss(rng), gauss(rng), gauss(rng), gauss(rng)});

  numerics::NelderMeadOptions opts;
  opts.initial_step = 0.3;
  opts.f_tol = f_tol;
  StartSearch out;
  for (const BlockAnsatz& start : all) {
    if (start.norm() == 0.0) continue;
    const BlockAnsatz s = start.normalized();
    const double v0 = objective(s);
    if (v0 < out.value) out = {s, v0};
    const numerics::NelderMeadResult nm = numerics::nelder_mead_minimize(on_angles, to_sphere(s), opts);
    if (nm.value < out.value) out = {from_sphere(nm.x), nm.value};
  }
  opts.initial_step = 0.02;
  const numerics::NelderMeadResult polish = numerics::nelder_mead_minimize(on_angles, to_sphere(out.best), opts);
  if (polish.value < out.value) out = {from_sphere(polish.x), polish.value};
  return out;
}

constexpr int kRandomStarts = 32;
constexpr double kFunctionTol = 1e-10;

std::vector<double> checked_angles(const ModelSpec& spec, bool* degenerate) {
  if (spec.sites() % 2 != 0) {
    throw Error(Errc::odd_sites, "product-state overlaps need an even number of sites");
  }
  const GroundReport report = ground_and_gap(spec);
  if (!report.even_vacuum) {
    throw Error(Errc::not_even_vacuum, "ground state lies outside the even vacuum (" + describe(spec) + ")");
  }
  *degenerate = report.degenerate;
  return even_vacuum_angles(spec);
}

}  // namespace

double BlockAnsatz::norm() const noexcept { return std::sqrt(a * a + b * b + c * c + d * d); }

BlockAnsatz BlockAnsatz::normalized() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(Errc::invalid_argument, "block ansatz has zero or non-finite norm");
  }
  return {a / n, b / n, c / n, d / n};
}

BlockAnsatz BlockAnsatz::from_site(double xi) noexcept {
  const double u = std::cos(0.5 * xi);
  const double v = std::sin(0.5 * xi);
  return {u * u, u * v, v * u, v * v};
}

BlockAnsatz AlternatingAnsatz::as_block() const noexcept {
  const double u1 = std::cos(phi), v1 = std::sin(phi), u2 = std::cos(psi), v2 = std::sin(psi);
  return {u1 * u2, u1 * v2, v1 * u2, v1 * v2};
}

const char* to_string(EntanglementMode mode) noexcept {
  switch (mode) {
    case EntanglementMode::per_site: return "site";
    case EntanglementMode::per_block: return "block";
    case EntanglementMode::per_site_af: return "af-site";
  }
  return "unknown";
}

double log2_abs_overlap_site(std::span<const double> angles, double xi, int sites) {
  return site_overlap(angles, xi, sites).log2_abs;
}

double overlap_site(std::span<const double> angles, double xi, int sites) {
  return site_overlap(angles, xi, sites).value();
}

double log2_abs_overlap_block(std::span<const double> angles, const BlockAnsatz& ansatz, int sites) {
  return BlockKernel(angles, sites).log_overlap(ansatz).log2_abs;
}

double overlap_block(std::span<const double> angles, const BlockAnsatz& ansatz, int sites) {
  return BlockKernel(angles, sites).log_overlap(ansatz).value();
}

EntanglementResult maximize_site(std::span<const double> angles, int sites) {
  require_sites(angles, sites);
  const auto log_overlap = [&](double xi) { return log2_abs_overlap_site(angles, xi, sites); };
  const numerics::ScalarOptimum opt = numerics::grid_then_golden_maximize(log_overlap, 0.0, kPi, 257, 1e-11);
  EntanglementResult r = finish(opt.value, sites, EntanglementMode::per_site);
  r.optimum = SiteAnsatz{opt.x};
  return r;
}

EntanglementResult maximize_site_af(std::span<const double> angles, int sites, std::optional<SiteAnsatz> site_hint) {
  const BlockKernel kernel(angles, sites);
  // Minimized objective: the entanglement density -2 log2|overlap| / N.
  const auto density = [&](std::span<const double> t) {
    return -2.0 * kernel.log_overlap(AlternatingAnsatz{t[0], t[1]}.as_block()).log2_abs / sites;
  };

  constexpr int kGrid = 33;
  struct Seed {
    double value;
    std::vector<double> x;
  };
  std::vector<Seed> seeds;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      std::vector<double> x{kPi * i / kGrid, kPi * j / kGrid};
      seeds.push_back({density(x), std::move(x)});
    }
  }
  std::partial_sort(seeds.begin(), seeds.begin() + 6, seeds.end(),
                    [](const Seed& a, const Seed& b) { return a.value < b.value; });
  seeds.resize(6);
  if (site_hint) {
    std::vector<double> x{0.5 * site_hint->xi, 0.5 * site_hint->xi};
    seeds.push_back({density(x), std::move(x)});
  }

  numerics::NelderMeadOptions opts;
  opts.initial_step = kPi / kGrid;
  opts.f_tol = kFunctionTol;
  Seed best = seeds.front();
  for (const Seed& s : seeds) {
    if (s.value < best.value) best = s;
    const numerics::NelderMeadResult nm = numerics::nelder_mead_minimize(density, s.x, opts);
    if (nm.value < best.value) best = {nm.value, nm.x};
  }
  EntanglementResult r = finish(-0.5 * best.value * sites, sites, EntanglementMode::per_site_af);
  r.optimum = AlternatingAnsatz{best.x[0], best.x[1]};
  return r;
}

EntanglementResult maximize_block(std::span<const double> angles, int sites, std::span<const BlockAnsatz> extra_starts) {
  const BlockKernel kernel(angles, sites);
  const auto density = [&](const BlockAnsatz& s) { return -2.0 * kernel.log_overlap(s).log2_abs / sites; };
  const StartSearch found = minimize_on_sphere(density, extra_starts, kRandomStarts, kFunctionTol);
  EntanglementResult r = finish(-0.5 * found.value * sites, sites, EntanglementMode::per_block);
  r.optimum = found.best;
  return r;
}

EntanglementResult maximize_site(const ModelSpec& spec) {
  bool degenerate = false;
  const std::vector<double> angles = checked_angles(spec, &degenerate);
  EntanglementResult r = maximize_site(angles, spec.sites());
  r.degenerate = degenerate;
  return r;
}

EntanglementResult maximize_site_af(const ModelSpec& spec) { return maximize_all(spec).af_site; }

EntanglementResult maximize_block(const ModelSpec& spec) { return maximize_all(spec).block; }

EntanglementTriple maximize_all(const ModelSpec& spec) {
  bool degenerate = false;
  const std::vector<double> angles = checked_angles(spec, &degenerate);
  EntanglementTriple t;
  t.site = maximize_site(angles, spec.sites());
  const SiteAnsatz site_opt = std::get<SiteAnsatz>(t.site.optimum);
  t.af_site = maximize_site_af(angles, spec.sites(), site_opt);
  const std::array<BlockAnsatz, 2> seeds{BlockAnsatz::from_site(site_opt.xi),
                                         std::get<AlternatingAnsatz>(t.af_site.optimum).as_block()};
  t.block = maximize_block(angles, spec.sites(), seeds);
  t.site.degenerate = t.af_site.degenerate = t.block.degenerate = degenerate;
  return t;
}

std::function<double(double)> theta_of_momentum(const ModelSpec& spec) {
  const double field = spec.field();
  const std::vector<BlockSpec> blocks(spec.blocks().begin(), spec.blocks().end());
  return [field, blocks](double mu) {
    double alpha = field;
    double beta = 0.0;
    for (const BlockSpec& b : blocks) {
      const double phase = mu * (1.0 + b.mediators);
      alpha -= b.strength * std::cos(phase);
      beta += (b.kind == BlockKind::X ? 1.0 : -1.0) * b.strength * std::sin(phase);
    }
    return bogoliubov_angle(alpha, beta);
  };
}

ThermoResult thermo_block_density(const std::function<double(double)>& theta_of_mu) {
  constexpr double kLogFloor = -1e4;
  const auto log_factor = [&](double mu, const BlockAnsatz& s) {
    const double f = BlockCoefficients::make(theta_of_mu(mu), theta_of_mu(kPi - mu), mu)(s);
    return f == 0.0 ? kLogFloor : std::max(kLogFloor, std::log2(std::abs(f)));
  };

  // Coarse stage: midpoint rule on a fixed grid, which is a long finite chain.
  constexpr int kMidpoints = 2048;
  const double h = 0.5 * kPi / kMidpoints;
  std::vector<BlockCoefficients> grid;
  grid.reserve(kMidpoints);
  for (int j = 0; j < kMidpoints; ++j) {
    const double mu = (j + 0.5) * h;
    grid.push_back(BlockCoefficients::make(theta_of_mu(mu), theta_of_mu(kPi - mu), mu));
  }
  const auto coarse = [&](const BlockAnsatz& s) {
    double sum = 0.0;
    for (const BlockCoefficients& c : grid) {
      const double f = c(s);
      sum += f == 0.0 ? kLogFloor : std::max(kLogFloor, std::log2(std::abs(f)));
    }
    return -sum * h / kPi;
  };
  const StartSearch rough = minimize_on_sphere(coarse, {}, kRandomStarts, kFunctionTol);

  // Fine stage: adaptive quadrature, refined locally from the coarse optimum.
  const auto fine = [&](std::span<const double> t) {
    const BlockAnsatz s = from_sphere(t);
    const auto integrand = [&](double mu) { return log_factor(mu, s); };
    return -numerics::integrate_adaptive_unchecked(integrand, 0.0, 0.5 * kPi, 1e-10).value / kPi;
  };
  numerics::NelderMeadOptions opts;
  opts.initial_step = 0.01;
  opts.f_tol = kFunctionTol;
  const std::vector<double> start = to_sphere(rough.best);
  const numerics::NelderMeadResult polished = numerics::nelder_mead_minimize(fine, start, opts);
  const BlockAnsatz best = polished.value <= fine(start) ? from_sphere(polished.x) : rough.best;

  ThermoResult out;
  out.optimum = best;
  const auto integrand = [&](double mu) { return log_factor(mu, out.optimum); };
  const numerics::QuadratureResult q = numerics::integrate_adaptive(integrand, 0.0, 0.5 * kPi, 1e-9);
  out.density = -q.value / kPi;
  out.quadrature_error = q.error_estimate / kPi;
  return out;
}

}  // namespace cxy
