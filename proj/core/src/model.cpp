#include "clusterxy/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clusterxy/error.hpp"

namespace cxy {

int ModelSpec::count(BlockKind kind) const noexcept {
  return static_cast<int>(
      std::count_if(blocks_.begin(), blocks_.end(), [kind](const BlockSpec& b) { return b.kind == kind; }));
}

ModelSpec make_model(int sites, double field, std::vector<BlockSpec> blocks) {
  if (sites < 2) {
    throw Error(Errc::invalid_size, "a ring needs at least 2 sites, got " + std::to_string(sites));
  }
  if (!std::isfinite(field)) {
    throw Error(Errc::non_finite_parameter, "transverse field is not finite");
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const BlockSpec& b = blocks[i];
    if (!std::isfinite(b.strength)) {
      throw Error(Errc::non_finite_parameter, "block " + std::to_string(i) + " strength is not finite");
    }
    if (b.mediators < 0) {
      throw Error(Errc::invalid_block, "block " + std::to_string(i) + " has negative mediator count");
    }
    if (b.mediators > sites - 2) {
      throw Error(Errc::block_too_long, "block " + std::to_string(i) + " with " + std::to_string(b.mediators) +
                                            " mediators does not fit on " + std::to_string(sites) + " sites");
    }
  }
  return ModelSpec(sites, field, std::move(blocks));
}

ModelSpec preset_xnmy(int n, int m, double r, double h, int sites) {
  return make_model(sites, h,
                    {{BlockKind::X, (1.0 + r) / 2.0, n}, {BlockKind::Y, (1.0 - r) / 2.0, m}});
}

ModelSpec preset_halfway_xy(double r, double h, int sites) {
  if (sites < 2 || sites % 2 != 0) {
    throw Error(Errc::invalid_size, "halfway interaction needs an even number of sites");
  }
  return preset_xnmy(sites / 2 - 1, sites / 2 - 1, r, h, sites);
}

ModelSpec preset_ghz_cluster(double g, int sites) {
  if (sites < 4 || sites % 2 != 0) {
    throw Error(Errc::invalid_size, "GHZ-cluster preset needs an even number of sites >= 4");
  }
  const double field = (1.0 + g) * (1.0 + g);
  return make_model(sites, field,
                    {{BlockKind::X, -2.0 * (g * g - 1.0), 0}, {BlockKind::X, -(g - 1.0) * (g - 1.0), 1}});
}

ModelSpec preset_spt_afm(double lambda, int sites, bool halfway) {
  if (sites < 4) {
    throw Error(Errc::invalid_size, "SPT-AFM preset needs at least 4 sites");
  }
  if (halfway && sites % 2 != 0) {
    throw Error(Errc::invalid_size, "halfway SPT-AFM preset needs an even number of sites");
  }
  const int x_mediators = halfway ? sites / 2 - 1 : 1;
  return make_model(sites, 0.0, {{BlockKind::X, 1.0, x_mediators}, {BlockKind::Y, -lambda, 0}});
}

std::vector<PauliString> to_pauli_strings(const ModelSpec& spec) {
  const int n_sites = spec.sites();
  std::vector<PauliString> out;
  out.reserve(static_cast<std::size_t>(n_sites) * (spec.blocks().size() + 1));
  for (int j = 0; j < n_sites; ++j) {
    for (const BlockSpec& b : spec.blocks()) {
      if (b.strength == 0.0) continue;
      std::string letters(static_cast<std::size_t>(n_sites), 'I');
      const char end = b.kind == BlockKind::X ? 'X' : 'Y';
      letters[static_cast<std::size_t>(j)] = end;
      for (int t = 1; t <= b.mediators; ++t) letters[static_cast<std::size_t>((j + t) % n_sites)] = 'Z';
      letters[static_cast<std::size_t>((j + b.mediators + 1) % n_sites)] = end;
      out.push_back({-b.strength, std::move(letters)});
    }
  }
  if (spec.field() != 0.0) {
    for (int j = 0; j < n_sites; ++j) {
      std::string letters(static_cast<std::size_t>(n_sites), 'I');
      letters[static_cast<std::size_t>(j)] = 'Z';
      out.push_back({-spec.field(), std::move(letters)});
    }
  }
  return out;
}

std::string describe(const ModelSpec& spec) {
  std::ostringstream os;
  // Adding 0.0 prints -0 as 0.
  os.precision(17);
  os << "sites=" << spec.sites() << " field=" << spec.field() + 0.0 << " blocks=[";
  bool first = true;
  for (const BlockSpec& b : spec.blocks()) {
    if (!first) os << ' ';
    first = false;
    os << (b.kind == BlockKind::X ? 'X' : 'Y') << ':' << b.strength + 0.0 << ':' << b.mediators;
  }
  os << ']';
  return os.str();
}

}  // namespace cxy
