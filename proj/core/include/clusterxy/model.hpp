#pragma once

#include <span>
#include <string>
#include <vector>

namespace cxy {

enum class BlockKind { X, Y };

/// One interaction term  -J * P_j Z_{j+1} ... Z_{j+n} P_{j+n+1}  summed over the ring,
/// with P = X or Y and n = mediators.
struct BlockSpec {
  BlockKind kind = BlockKind::X;
  double strength = 0.0;
  int mediators = 0;

  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

/// A validated member of the cluster-XY family on a periodic ring:
///
///   H = - sum_j [ sum_blocks J * P_j Z...Z P_{j+n+1} + h Z_j ].
///
/// Sites are indexed 0..N-1 and every position is taken mod N. Blocks keep their
/// input order; zero-strength and duplicate blocks are kept as given.
class ModelSpec {
 public:
  int sites() const noexcept { return sites_; }
  double field() const noexcept { return field_; }
  std::span<const BlockSpec> blocks() const noexcept { return blocks_; }
  int count(BlockKind kind) const noexcept;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

 private:
  friend ModelSpec make_model(int, double, std::vector<BlockSpec>);
  ModelSpec(int sites, double field, std::vector<BlockSpec> blocks)
      : sites_(sites), field_(field), blocks_(std::move(blocks)) {}

  int sites_;
  double field_;
  std::vector<BlockSpec> blocks_;
};

/// Throws cxy::Error (invalid-size, block-too-long, invalid-block, non-finite-parameter).
ModelSpec make_model(int sites, double field, std::vector<BlockSpec> blocks);

// Presets. All of them go through make_model.

/// X block (1+r)/2 with n mediators, Y block (1-r)/2 with m mediators, field h.
/// n = m = 0 is the standard XY chain, n = m = 1 the XzY chain, n = m = sites/2 - 1
/// the halfway chain.
ModelSpec preset_xnmy(int n, int m, double r, double h, int sites);

/// Halfway XY chain: n = m = sites/2 - 1. Requires even sites.
ModelSpec preset_halfway_xy(double r, double h, int sites);

/// GHZ-cluster chain rotated into the family: field (1+g)^2,
/// X blocks {-2(g^2-1), 0 mediators} and {-(g-1)^2, 1 mediator}.
ModelSpec preset_ghz_cluster(double g, int sites);

/// Cluster-antiferromagnet: X block of strength 1 (1 mediator, or sites/2 - 1 when
/// halfway) plus a nearest-neighbour Y block of strength -lambda; zero field.
ModelSpec preset_spt_afm(double lambda, int sites, bool halfway);

struct PauliString {
  double coefficient = 0.0;
  std::string letters;  // one of I, X, Y, Z per site

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;
};

/// Literal expansion of the Hamiltonian. For each site j and block the string has the
/// endpoint letter at j and j+mediators+1 (mod N) with Z in between and coefficient
/// -strength; each site also gets -h Z_j. Terms with a zero coefficient are omitted.
std::vector<PauliString> to_pauli_strings(const ModelSpec& spec);

std::string describe(const ModelSpec& spec);

}  // namespace cxy
