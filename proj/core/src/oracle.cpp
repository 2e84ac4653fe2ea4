#include "clusterxy/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "clusterxy/error.hpp"
#include "clusterxy/freefermion.hpp"
#include "clusterxy/numerics.hpp"

namespace cxy::oracle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Amplitude kI{0.0, 1.0};

void guard_sites(int sites) {
  if (sites < 1) {
    throw Error(Errc::invalid_size, "dense operators need at least one site");
  }
  if (sites > kMaxDenseSites) {
    throw Error(Errc::size_guard, "dense operators are limited to " + std::to_string(kMaxDenseSites) +
                                      " sites, got " + std::to_string(sites));
  }
}

std::uint64_t site_bit(int site, int sites) { return std::uint64_t{1} << (sites - 1 - site); }

bool odd_popcount(std::uint64_t x) { return (std::popcount(x) & 1) != 0; }

}  // namespace

struct DenseOperator::Impl {
  int sites = 0;
  Eigen::MatrixXd re;
  Eigen::MatrixXd im;  // empty while every entry is real

  bool is_real() const { return im.size() == 0; }
  void add(std::size_t row, std::size_t col, Amplitude value) {
    re(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += value.real();
    if (value.imag() != 0.0) {
      if (is_real()) im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
      im(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += value.imag();
    }
  }
  Eigen::MatrixXcd as_complex() const {
    Eigen::MatrixXcd m = re.cast<Amplitude>();
    if (!is_real()) m += kI * im.cast<Amplitude>();
    return m;
  }
};

StateVector::StateVector(int sites, std::vector<Amplitude> amplitudes) : sites_(sites), amplitudes_(std::move(amplitudes)) {
  if (sites < 1 || sites > 62 || amplitudes_.size() != (std::size_t{1} << sites)) {
    throw Error(Errc::dimension_mismatch, "state vector length must be 2^sites");
  }
}

double StateVector::norm() const {
  double s = 0.0;
  for (const Amplitude& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

Amplitude inner(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(Errc::dimension_mismatch, "inner product of states with different dimensions");
  }
  Amplitude s = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

DenseOperator::DenseOperator(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
DenseOperator::DenseOperator(DenseOperator&&) noexcept = default;
DenseOperator& DenseOperator::operator=(DenseOperator&&) noexcept = default;
DenseOperator::~DenseOperator() = default;

int DenseOperator::sites() const noexcept { return impl_->sites; }
std::size_t DenseOperator::dimension() const noexcept { return static_cast<std::size_t>(impl_->re.rows()); }

Amplitude DenseOperator::entry(std::size_t row, std::size_t col) const {
  const auto r = static_cast<Eigen::Index>(row);
  const auto c = static_cast<Eigen::Index>(col);
  return {impl_->re(r, c), impl_->is_real() ? 0.0 : impl_->im(r, c)};
}

double DenseOperator::hermiticity_defect() const {
  double defect = (impl_->re - impl_->re.transpose()).cwiseAbs().maxCoeff();
  if (!impl_->is_real()) defect = std::max(defect, (impl_->im + impl_->im.transpose()).cwiseAbs().maxCoeff());
  return defect;
}

StateVector DenseOperator::apply(const StateVector& v) const {
  if (v.dimension() != dimension()) {
    throw Error(Errc::dimension_mismatch, "operator and state dimensions differ");
  }
  const Eigen::Map<const Eigen::VectorXcd> in(v.amplitudes().data(), static_cast<Eigen::Index>(v.dimension()));
  Eigen::VectorXcd out = impl_->re.cast<Amplitude>() * in;
  if (!impl_->is_real()) out += kI * (impl_->im.cast<Amplitude>() * in);
  return StateVector(v.sites(), std::vector<Amplitude>(out.data(), out.data() + out.size()));
}

double DenseOperator::expectation(const StateVector& v) const { return inner(v, apply(v)).real(); }

namespace {

void accumulate_string(DenseOperator::Impl& impl, const PauliString& string) {
  const int n = impl.sites;
  std::uint64_t flip = 0;
  std::uint64_t sign_bits = 0;
  int n_y = 0;
  for (int j = 0; j < n; ++j) {
    const std::uint64_t bit = site_bit(j, n);
    switch (string.letters[static_cast<std::size_t>(j)]) {
      case 'I': break;
      case 'X': flip |= bit; break;
      case 'Y':
        flip |= bit;
        sign_bits |= bit;
        ++n_y;
        break;
      case 'Z': sign_bits |= bit; break;
      default: throw Error(Errc::invalid_argument, "Pauli letters must be I, X, Y or Z");
    }
  }
  // Y|0> = i|1>, Y|1> = -i|0>, Z|1> = -|1>: the phase is i^{#Y} (-1)^{#(Y or Z) on bit 1}.
  static constexpr std::array<Amplitude, 4> kIPowers{Amplitude{1, 0}, Amplitude{0, 1}, Amplitude{-1, 0},
                                                     Amplitude{0, -1}};
  const Amplitude base = string.coefficient * kIPowers[static_cast<std::size_t>(n_y % 4)];
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < dim; ++s) {
    impl.add(s ^ flip, s, odd_popcount(s & sign_bits) ? -base : base);
  }
}

}  // namespace

DenseOperator dense_hamiltonian(std::span<const PauliString> strings, int sites) {
  guard_sites(sites);
  auto impl = std::make_unique<DenseOperator::Impl>();
  impl->sites = sites;
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << sites);
  impl->re = Eigen::MatrixXd::Zero(dim, dim);
  for (const PauliString& s : strings) {
    if (s.letters.size() != static_cast<std::size_t>(sites)) {
      throw Error(Errc::dimension_mismatch, "Pauli string length differs from the site count");
    }
    accumulate_string(*impl, s);
  }
  return DenseOperator(std::move(impl));
}

DenseOperator dense_hamiltonian(const ModelSpec& spec) {
  guard_sites(spec.sites());
  const std::vector<PauliString> strings = to_pauli_strings(spec);
  return dense_hamiltonian(strings, spec.sites());
}

DenseOperator dense_pauli_product(const PauliString& string) {
  const std::array<PauliString, 1> one{string};
  return dense_hamiltonian(one, static_cast<int>(string.letters.size()));
}

std::vector<double> exact_spectrum(const DenseOperator& op, std::size_t count) {
  if (count > op.dimension()) {
    throw Error(Errc::count_exceeds_dimension, "requested more eigenvalues than the dimension");
  }
  Eigen::VectorXd values;
  if (op.impl_->is_real()) {
    values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(op.impl_->re, Eigen::EigenvaluesOnly).eigenvalues();
  } else {
    values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(op.impl_->as_complex(), Eigen::EigenvaluesOnly)
                 .eigenvalues();
  }
  return {values.data(), values.data() + count};
}

double z_parity(const StateVector& v) {
  double p = 0.0;
  for (std::size_t s = 0; s < v.dimension(); ++s) p += (odd_popcount(s) ? -1.0 : 1.0) * std::norm(v[s]);
  return p;
}

StateVector exact_ground_state(const DenseOperator& op) {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
  if (op.impl_->is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.impl_->re);
    values = solver.eigenvalues();
    vectors = solver.eigenvectors().cast<Amplitude>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.impl_->as_complex());
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  }
  const double e0 = values(0);
  Eigen::Index multiplicity = 1;
  while (multiplicity < values.size() && values(multiplicity) - e0 < 1e-10) ++multiplicity;

  Eigen::VectorXcd best = vectors.col(0);
  if (multiplicity > 1) {
    // The ground space is parity-symmetric; keep the largest even-parity projection.
    double best_norm = -1.0;
    for (Eigen::Index c = 0; c < multiplicity; ++c) {
      Eigen::VectorXcd even = vectors.col(c);
      for (Eigen::Index s = 0; s < even.size(); ++s) {
        if (odd_popcount(static_cast<std::uint64_t>(s))) even(s) = 0.0;
      }
      if (even.norm() > best_norm) {
        best_norm = even.norm();
        best = even;
      }
    }
  }
  best.normalize();
  return StateVector(op.sites(), std::vector<Amplitude>(best.data(), best.data() + best.size()));
}

namespace {

// sum_j phase_j c_j^+ applied to v; c_j^+ carries the string (-1)^{occupied sites before j}.
std::vector<Amplitude> apply_creator(const std::vector<Amplitude>& v, std::span<const Amplitude> phases, int sites) {
  std::vector<Amplitude> out(v.size(), 0.0);
  for (int j = 0; j < sites; ++j) {
    const std::uint64_t bit = site_bit(j, sites);
    const int shift = sites - j;
    for (std::uint64_t s = 0; s < v.size(); ++s) {
      if ((s & bit) != 0 || v[s] == 0.0) continue;
      const bool negative = shift < 64 && odd_popcount(s >> shift);
      out[s | bit] += (negative ? -phases[static_cast<std::size_t>(j)] : phases[static_cast<std::size_t>(j)]) * v[s];
    }
  }
  return out;
}

}  // namespace

StateVector even_vacuum_state(const ModelSpec& spec) {
  guard_sites(spec.sites());
  const std::vector<double> angles = even_vacuum_angles(spec);
  return even_vacuum_state(angles, spec.sites());
}

StateVector even_vacuum_state(std::span<const double> angles, int sites) {
  const int n = sites;
  guard_sites(n);
  if (n % 2 != 0) {
    throw Error(Errc::odd_sites, "the even vacuum needs an even number of sites");
  }
  if (angles.size() != static_cast<std::size_t>(n / 2)) {
    throw Error(Errc::dimension_mismatch, "expected one angle per momentum pair");
  }
  std::vector<Amplitude> v(std::size_t{1} << n, 0.0);
  v[0] = 1.0;

  auto momentum_phases = [n](int k) {
    std::vector<Amplitude> phases(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      phases[static_cast<std::size_t>(j)] = std::polar(1.0 / std::sqrt(n), 2.0 * kPi * j * (k + 0.5) / n);
    }
    return phases;
  };
  for (int k = 0; k < n / 2; ++k) {
    const double theta = angles[static_cast<std::size_t>(k)];
    const std::vector<Amplitude> pair =
        apply_creator(apply_creator(v, momentum_phases(n - k - 1), n), momentum_phases(k), n);
    for (std::size_t s = 0; s < v.size(); ++s) v[s] = std::cos(theta) * v[s] + kI * std::sin(theta) * pair[s];
  }
  StateVector out(n, std::move(v));
  const double norm = out.norm();
  std::vector<Amplitude> normalized(out.amplitudes().begin(), out.amplitudes().end());
  for (Amplitude& a : normalized) a /= norm;
  return StateVector(n, std::move(normalized));
}

StateVector product_state(std::span<const SiteAmplitudes> sites) {
  const int n = static_cast<int>(sites.size());
  guard_sites(n);
  std::vector<Amplitude> v(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < v.size(); ++s) {
    Amplitude a = 1.0;
    for (int j = 0; j < n; ++j) a *= sites[static_cast<std::size_t>(j)][(s & site_bit(j, n)) != 0 ? 1 : 0];
    v[s] = a;
  }
  return StateVector(n, std::move(v));
}

StateVector block_product_state(std::span<const BlockAmplitudes> blocks) {
  const int n = 2 * static_cast<int>(blocks.size());
  guard_sites(n);
  std::vector<Amplitude> v(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < v.size(); ++s) {
    Amplitude a = 1.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto pair = static_cast<std::size_t>((s >> (n - 2 - 2 * static_cast<int>(b))) & 3U);
      a *= blocks[b][pair];
    }
    v[s] = a;
  }
  return StateVector(n, std::move(v));
}

StateVector site_ansatz_state(const SiteAnsatz& ansatz, int sites) {
  const std::vector<SiteAmplitudes> each(static_cast<std::size_t>(sites),
                                         SiteAmplitudes{std::cos(0.5 * ansatz.xi), std::sin(0.5 * ansatz.xi)});
  return product_state(each);
}

StateVector block_ansatz_state(const BlockAnsatz& ansatz, int sites) {
  if (sites % 2 != 0) {
    throw Error(Errc::odd_sites, "block product states need an even number of sites");
  }
  const BlockAnsatz s = ansatz.normalized();
  const std::vector<BlockAmplitudes> each(static_cast<std::size_t>(sites / 2), BlockAmplitudes{s.a, s.b, s.c, s.d});
  return block_product_state(each);
}

double direct_overlap(const StateVector& state, const SiteAnsatz& ansatz) {
  return std::abs(inner(site_ansatz_state(ansatz, state.sites()), state));
}

double direct_overlap(const StateVector& state, const BlockAnsatz& ansatz) {
  return std::abs(inner(block_ansatz_state(ansatz, state.sites()), state));
}

namespace {

struct Family {
  int dimension;
  std::function<StateVector(std::span<const double>)> build;
};

SiteAmplitudes site_amplitudes(double xi, double phase) {
  return {std::cos(0.5 * xi), std::polar(std::sin(0.5 * xi), phase)};
}

Family make_family(BruteKind kind, int sites, bool complex_amplitudes) {
  switch (kind) {
    case BruteKind::site:
      return {complex_amplitudes ? 2 : 1, [=](std::span<const double> x) {
                const std::vector<SiteAmplitudes> each(static_cast<std::size_t>(sites),
                                                       site_amplitudes(x[0], complex_amplitudes ? x[1] : 0.0));
                return product_state(each);
              }};
    case BruteKind::af_site:
      return {complex_amplitudes ? 4 : 2, [=](std::span<const double> x) {
                const SiteAmplitudes even = complex_amplitudes ? site_amplitudes(x[0], x[1]) : site_amplitudes(x[0], 0.0);
                const SiteAmplitudes odd = complex_amplitudes ? site_amplitudes(x[2], x[3]) : site_amplitudes(x[1], 0.0);
                std::vector<SiteAmplitudes> each(static_cast<std::size_t>(sites));
                for (std::size_t j = 0; j < each.size(); ++j) each[j] = j % 2 == 0 ? even : odd;
                return product_state(each);
              }};
    case BruteKind::block:
      return {complex_amplitudes ? 8 : 4, [=](std::span<const double> x) {
                BlockAmplitudes amp{};
                double norm2 = 0.0;
                for (std::size_t i = 0; i < 4; ++i) {
                  amp[i] = complex_amplitudes ? Amplitude{x[2 * i], x[2 * i + 1]} : Amplitude{x[i], 0.0};
                  norm2 += std::norm(amp[i]);
                }
                const double norm = norm2 > 0.0 ? std::sqrt(norm2) : 1.0;
                for (Amplitude& a : amp) a /= norm;
                const std::vector<BlockAmplitudes> each(static_cast<std::size_t>(sites / 2), amp);
                return block_product_state(each);
              }};
  }
  throw Error(Errc::invalid_argument, "unknown ansatz family");
}

// Deterministic seeds: a real grid over the family plus uniformly random points.
std::vector<std::vector<double>> seed_points(BruteKind kind, bool complex_amplitudes, const BruteOptions& options) {
  std::vector<std::vector<double>> seeds;
  switch (kind) {
    case BruteKind::site:
      for (int i = 0; i <= 90; ++i) {
        const double xi = kPi * i / 90.0;
        if (complex_amplitudes) {
          for (int p = 0; p < 12; ++p) seeds.push_back({xi, 2.0 * kPi * p / 12.0});
        } else {
          seeds.push_back({xi});
        }
      }
      break;
    case BruteKind::af_site:
      for (int i = 0; i <= 30; ++i) {
        for (int j = 0; j <= 30; ++j) {
          const double x1 = 2.0 * kPi * i / 30.0;
          const double x2 = 2.0 * kPi * j / 30.0;
          seeds.push_back(complex_amplitudes ? std::vector<double>{x1, 0.0, x2, 0.0} : std::vector<double>{x1, x2});
        }
      }
      break;
    case BruteKind::block:
      for (int i = 0; i <= 8; ++i) {
        for (int j = 0; j <= 8; ++j) {
          for (int l = 0; l < 16; ++l) {
            const double t1 = kPi * i / 8.0, t2 = kPi * j / 8.0, t3 = 2.0 * kPi * l / 16.0;
            const std::array<double, 4> r{std::cos(t1), std::sin(t1) * std::cos(t2),
                                          std::sin(t1) * std::sin(t2) * std::cos(t3),
                                          std::sin(t1) * std::sin(t2) * std::sin(t3)};
            if (complex_amplitudes) {
              seeds.push_back({r[0], 0.0, r[1], 0.0, r[2], 0.0, r[3], 0.0});
            } else {
              seeds.push_back({r[0], r[1], r[2], r[3]});
            }
          }
        }
      }
      break;
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::normal_distribution<double> gauss;
  const std::size_t dim = seeds.front().size();
  for (int r = 0; r < options.random_seeds; ++r) {
    std::vector<double> x(dim);
    for (double& v : x) v = kind == BruteKind::block ? gauss(rng) : angle(rng);
    seeds.push_back(std::move(x));
  }
  return seeds;
}

}  // namespace

EntanglementResult brute_max_overlap(const StateVector& state, BruteKind kind, const BruteOptions& options) {
  const int n = state.sites();
  guard_sites(n);
  if ((kind == BruteKind::block || kind == BruteKind::af_site) && n % 2 != 0) {
    throw Error(Errc::odd_sites, "block and alternating ansatz families need an even number of sites");
  }
  if (kind == BruteKind::block && n > kMaxBruteBlockSites) {
    throw Error(Errc::size_guard, "brute-force block maximization is limited to " +
                                      std::to_string(kMaxBruteBlockSites) + " sites");
  }
  const Family family = make_family(kind, n, options.complex_amplitudes);
  const auto negative_overlap = [&](std::span<const double> x) { return -std::abs(inner(family.build(x), state)); };

  struct Scored {
    double value;
    std::vector<double> x;
  };
  std::vector<Scored> scored;
  for (std::vector<double>& x : seed_points(kind, options.complex_amplitudes, options)) {
    scored.push_back({negative_overlap(x), std::move(x)});
  }
  const std::size_t keep = std::min<std::size_t>(8, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(),
                    [](const Scored& a, const Scored& b) { return a.value < b.value; });

  numerics::NelderMeadOptions opts;
  opts.initial_step = 0.2;
  opts.f_tol = 1e-15;
  opts.max_evaluations = 20'000;
  Scored best = scored.front();
  for (std::size_t i = 0; i < keep; ++i) {
    numerics::NelderMeadResult nm = numerics::nelder_mead_minimize(negative_overlap, scored[i].x, opts);
    // A restart from the converged point escapes a collapsed simplex.
    opts.initial_step = 0.02;
    nm = numerics::nelder_mead_minimize(negative_overlap, nm.x, opts);
    opts.initial_step = 0.2;
    if (nm.value < best.value) best = {nm.value, nm.x};
  }

  EntanglementResult r;
  r.sites = n;
  r.lambda_max = std::min(1.0, -best.value);
  r.eg_total = -2.0 * std::log2(r.lambda_max);
  r.density = r.eg_total / n;
  const std::vector<double>& x = best.x;
  switch (kind) {
    case BruteKind::site:
      r.mode = EntanglementMode::per_site;
      r.optimum = SiteAnsatz{x[0]};
      break;
    case BruteKind::af_site:
      r.mode = EntanglementMode::per_site_af;
      r.optimum = AlternatingAnsatz{0.5 * x[0], 0.5 * x[options.complex_amplitudes ? 2 : 1]};
      break;
    case BruteKind::block: {
      r.mode = EntanglementMode::per_block;
      // Rotate the global phase so the largest amplitude is real, then keep real parts.
      const std::size_t stride = options.complex_amplitudes ? 2 : 1;
      std::array<Amplitude, 4> amp{};
      for (std::size_t i = 0; i < 4; ++i) {
        amp[i] = options.complex_amplitudes ? Amplitude{x[stride * i], x[stride * i + 1]} : Amplitude{x[i], 0.0};
      }
      const auto largest = *std::max_element(amp.begin(), amp.end(),
                                             [](Amplitude a, Amplitude b) { return std::abs(a) < std::abs(b); });
      const Amplitude unphase = std::abs(largest) > 0.0 ? std::conj(largest) / std::abs(largest) : 1.0;
      r.optimum = BlockAnsatz{(amp[0] * unphase).real(), (amp[1] * unphase).real(), (amp[2] * unphase).real(),
                              (amp[3] * unphase).real()};
      break;
    }
  }
  return r;
}

}  // namespace cxy::oracle
