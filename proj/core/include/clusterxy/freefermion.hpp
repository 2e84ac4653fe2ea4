#pragma once

#include <span>
#include <vector>

#include "clusterxy/model.hpp"

namespace cxy {

/// Fermion-parity sector after the Jordan-Wigner map.
///   odd:  periodic fermions (momentum shift b = 0), odd fermion number
///   even: antiperiodic fermions (b = 1/2), even fermion number
enum class Sector { odd, even };

enum class Parity { even, odd };

constexpr double momentum_shift(Sector s) noexcept { return s == Sector::odd ? 0.0 : 0.5; }
constexpr Parity required_parity(Sector s) noexcept { return s == Sector::odd ? Parity::odd : Parity::even; }
const char* to_string(Sector s) noexcept;

/// Two levels are degenerate when they differ by less than this times max(1, |E|).
inline constexpr double kDegeneracyRelTol = 1e-10;
bool nearly_equal_levels(double a, double b) noexcept;

struct ModeData {
  int k = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;    // Bogoliubov angle; 0 for special modes and for alpha = beta = 0
  double epsilon = 0.0;  // 2 sqrt(alpha^2 + beta^2), or 2 alpha for special modes
  bool special = false;
  int partner = 0;       // N - k - 2b (mod N); k itself for special modes
};

/// Angle with cos 2theta = alpha / sqrt(alpha^2 + beta^2) and sin theta carrying sgn(beta),
/// sgn(0) = +1. Returns 0 when alpha = beta = 0.
double bogoliubov_angle(double alpha, double beta) noexcept;

/// Per-momentum quadratic-form data of one sector, k = 0..N-1.
std::vector<ModeData> mode_data(const ModelSpec& spec, Sector sector);

struct ConstrainedMinimum {
  double energy = 0.0;
  std::vector<int> occupation;  // ascending momentum indices
};

/// Lowest many-body energy  -1/2 sum eps + sum_{occupied} eps  over occupations of the
/// given fermion parity. Occupies every negative-energy mode, then applies the single
/// cheapest toggle if the parity is wrong.
ConstrainedMinimum parity_constrained_minimum(std::span<const ModeData> modes, Parity parity);

struct SectorLevel {
  double energy = 0.0;
  std::vector<int> occupation;
};

/// The `count` lowest levels of a sector (with multiplicity), ascending, each with the
/// occupation that produces it. Throws count-exceeds-dimension when count > 2^(N-1).
std::vector<SectorLevel> sector_level_states(const ModelSpec& spec, Sector sector, int count);
std::vector<double> sector_levels(const ModelSpec& spec, Sector sector, int count);

struct SectorSolution {
  Sector sector = Sector::even;
  double energy = 0.0;
  std::vector<int> occupation;
  double second_energy = 0.0;
  bool degenerate = false;
};

SectorSolution solve_sector(const ModelSpec& spec, Sector sector);

struct GroundReport {
  double ground_energy = 0.0;
  double first_excited = 0.0;
  double gap = 0.0;
  Sector ground_sector = Sector::even;
  bool even_vacuum = false;  // ground state is the empty even-sector state
  bool degenerate = false;   // gap below the degeneracy tolerance
  SectorSolution odd;
  SectorSolution even;
};

/// Ground energy and gap from the two lowest levels of each sector. Sector ties resolve
/// in favour of the even sector.
GroundReport ground_and_gap(const ModelSpec& spec);

/// Even-sector Bogoliubov angles theta_k for k = 0..N/2-1, the pairs (k, N-k-1) that
/// build the even vacuum  prod_k [cos theta_k + i sin theta_k c_k^+ c_{N-k-1}^+] |0>.
/// Throws odd-sites for odd N.
std::vector<double> even_vacuum_angles(const ModelSpec& spec);

}  // namespace cxy
