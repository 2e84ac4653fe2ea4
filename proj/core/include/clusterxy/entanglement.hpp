#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "clusterxy/model.hpp"

namespace cxy {

/// Translation-invariant single-site state cos(xi/2)|up> + sin(xi/2)|down>, xi in [0, pi].
struct SiteAnsatz {
  double xi = 0.0;
};

/// Two-site state a|uu> + b|ud> + c|du> + d|dd>, repeated on blocks (0,1), (2,3), ...
struct BlockAnsatz {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double norm() const noexcept;
  BlockAnsatz normalized() const;
  static BlockAnsatz from_site(double xi) noexcept;
};

/// Period-2 product state (cos phi|up> + sin phi|down>)(cos psi|up> + sin psi|down>).
struct AlternatingAnsatz {
  double phi = 0.0;
  double psi = 0.0;

  BlockAnsatz as_block() const noexcept;
};

enum class EntanglementMode { per_site, per_block, per_site_af };
const char* to_string(EntanglementMode mode) noexcept;

struct EntanglementResult {
  double lambda_max = 1.0;  // maximal |<Phi|Psi>|
  double eg_total = 0.0;    // -log2(lambda_max^2)
  double density = 0.0;     // eg_total / sites
  int sites = 0;
  EntanglementMode mode = EntanglementMode::per_site;
  std::variant<SiteAnsatz, BlockAnsatz, AlternatingAnsatz> optimum;
  bool degenerate = false;  // the ground level is degenerate; the even vacuum was used
};

/// <Psi_even|Phi(xi)> for the translation-invariant single-site product state. `angles`
/// are the N/2 even-vacuum angles. The product is accumulated in the log domain.
double overlap_site(std::span<const double> angles, double xi, int sites);
double log2_abs_overlap_site(std::span<const double> angles, double xi, int sites);

/// <Psi_even|Phi> for the repeated two-site state (normalized ansatz expected).
double overlap_block(std::span<const double> angles, const BlockAnsatz& ansatz, int sites);
double log2_abs_overlap_block(std::span<const double> angles, const BlockAnsatz& ansatz, int sites);

// The maximizers require an even number of sites and an even-vacuum ground state;
// otherwise they throw odd-sites or ground-state-not-even-vacuum.
EntanglementResult maximize_site(const ModelSpec& spec);
EntanglementResult maximize_block(const ModelSpec& spec);
EntanglementResult maximize_site_af(const ModelSpec& spec);

// Angle-level entry points with no ground-state check.
EntanglementResult maximize_site(std::span<const double> angles, int sites);
EntanglementResult maximize_site_af(std::span<const double> angles, int sites,
                                    std::optional<SiteAnsatz> site_hint = std::nullopt);
EntanglementResult maximize_block(std::span<const double> angles, int sites,
                                  std::span<const BlockAnsatz> extra_starts = {});

/// All three maximizations for one state, seeded so that
/// lambda(block) >= lambda(af-site) >= lambda(site).
struct EntanglementTriple {
  EntanglementResult site;
  EntanglementResult af_site;
  EntanglementResult block;
};
EntanglementTriple maximize_all(const ModelSpec& spec);

/// Even-sector Bogoliubov angle as a continuous function of the momentum mu in (0, pi),
/// built from the model's blocks with their mediator counts held fixed.
std::function<double(double)> theta_of_momentum(const ModelSpec& spec);

struct ThermoResult {
  double density = 0.0;
  BlockAnsatz optimum;
  double quadrature_error = 0.0;
};

/// Infinite-chain block entanglement per site:
///   -(1/pi) max_{a,b,c,d} integral_0^{pi/2} log2 |F(mu; a,b,c,d)| dmu,
/// with F the continuum version of the per-momentum block factor.
ThermoResult thermo_block_density(const std::function<double(double)>& theta_of_mu);

}  // namespace cxy
