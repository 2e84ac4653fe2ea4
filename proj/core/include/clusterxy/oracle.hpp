#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "clusterxy/entanglement.hpp"
#include "clusterxy/model.hpp"

// Brute-force reference path. Basis convention: site 0 is the most significant bit of
// the basis index and |up> is bit 0, so site j sits at bit (N - 1 - j).
namespace cxy::oracle {

inline constexpr int kMaxDenseSites = 14;
inline constexpr int kMaxBruteBlockSites = 10;

using Amplitude = std::complex<double>;

/// Unit-norm vector of 2^N amplitudes.
class StateVector {
 public:
  StateVector() = default;
  StateVector(int sites, std::vector<Amplitude> amplitudes);

  int sites() const noexcept { return sites_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  Amplitude operator[](std::size_t i) const { return amplitudes_[i]; }
  double norm() const;

 private:
  int sites_ = 0;
  std::vector<Amplitude> amplitudes_;
};

/// <a|b>.
Amplitude inner(const StateVector& a, const StateVector& b);

/// Hermitian matrix on 2^N basis states.
class DenseOperator {
 public:
  DenseOperator(DenseOperator&&) noexcept;
  DenseOperator& operator=(DenseOperator&&) noexcept;
  ~DenseOperator();

  int sites() const noexcept;
  std::size_t dimension() const noexcept;
  Amplitude entry(std::size_t row, std::size_t col) const;
  /// max |entry(i,j) - conj(entry(j,i))|.
  double hermiticity_defect() const;
  StateVector apply(const StateVector& v) const;
  /// <v|O|v>, real part.
  double expectation(const StateVector& v) const;

  struct Impl;

 private:
  explicit DenseOperator(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;

  friend DenseOperator dense_hamiltonian(std::span<const PauliString> strings, int sites);
  friend DenseOperator dense_pauli_product(const PauliString& string);
  friend std::vector<double> exact_spectrum(const DenseOperator& op, std::size_t count);
  friend StateVector exact_ground_state(const DenseOperator& op);
};

/// Sum of the Kronecker-extended Pauli strings. Throws size-guard above kMaxDenseSites.
DenseOperator dense_hamiltonian(std::span<const PauliString> strings, int sites);
DenseOperator dense_hamiltonian(const ModelSpec& spec);

/// A single string as an operator, for stabilizer checks.
DenseOperator dense_pauli_product(const PauliString& string);

/// The `count` smallest eigenvalues, ascending. Throws count-exceeds-dimension.
std::vector<double> exact_spectrum(const DenseOperator& op, std::size_t count);

/// Lowest eigenvector. Within a degenerate ground space (splitting < 1e-10) the
/// returned vector is the even-parity one, prod_j sigma^z_j = +1.
StateVector exact_ground_state(const DenseOperator& op);

/// Eigenvalue of prod_j sigma^z_j on v, or its expectation for mixed-parity vectors.
double z_parity(const StateVector& v);

/// The even-sector Bogoliubov vacuum built in the spin basis by applying momentum-space
/// fermion pair creators to |up ... up>. Requires an even number of sites.
StateVector even_vacuum_state(const ModelSpec& spec);
StateVector even_vacuum_state(std::span<const double> angles, int sites);

using SiteAmplitudes = std::array<Amplitude, 2>;   // (up, down)
using BlockAmplitudes = std::array<Amplitude, 4>;  // (uu, ud, du, dd)

StateVector product_state(std::span<const SiteAmplitudes> sites);
StateVector block_product_state(std::span<const BlockAmplitudes> blocks);
StateVector site_ansatz_state(const SiteAnsatz& ansatz, int sites);
StateVector block_ansatz_state(const BlockAnsatz& ansatz, int sites);

/// |<Phi|Psi>| with Phi expanded into the full basis. Throws dimension-mismatch.
double direct_overlap(const StateVector& state, const SiteAnsatz& ansatz);
double direct_overlap(const StateVector& state, const BlockAnsatz& ansatz);

enum class BruteKind { site, block, af_site };

struct BruteOptions {
  bool complex_amplitudes = true;
  int random_seeds = 200;
  std::uint64_t seed = 0x0bad5eedULL;
};

/// Maximal |<Phi|Psi>| over the ansatz family by grid and random seeding plus Nelder-Mead
/// refinement of the best seeds. The optimum field carries the real parts of the optimal
/// amplitudes. Throws size-guard for block kind above kMaxBruteBlockSites.
EntanglementResult brute_max_overlap(const StateVector& state, BruteKind kind, const BruteOptions& options = {});

}  // namespace cxy::oracle
