#include "clusterxy/freefermion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include "clusterxy/error.hpp"

namespace cxy {

const char* to_string(Sector s) noexcept { return s == Sector::odd ? "odd" : "even"; }

bool nearly_equal_levels(double a, double b) noexcept {
  return std::abs(a - b) < kDegeneracyRelTol * std::max({1.0, std::abs(a), std::abs(b)});
}

namespace {

bool is_special(int k, int n_sites, Sector sector) {
  if (sector == Sector::odd) {
    return k == 0 || (n_sites % 2 == 0 && k == n_sites / 2);
  }
  return n_sites % 2 == 1 && k == (n_sites - 1) / 2;
}

// Block phase 2 pi (k + b)(1 + n) / N, reduced to (-pi, pi] through integer arithmetic
// so that a mode and its partner see exactly opposite angles.
double block_phase(int k, Sector sector, int mediators, int n_sites) {
  const long long two_n = 2LL * n_sites;
  const long long twice_momentum = 2LL * k + (sector == Sector::even ? 1 : 0);
  long long q = (twice_momentum * (1LL + mediators)) % two_n;
  if (q > n_sites) q -= two_n;
  return std::numbers::pi * static_cast<double>(q) / static_cast<double>(n_sites);
}

}  // namespace

double bogoliubov_angle(double alpha, double beta) noexcept {
  if (beta == 0.0) {
    // sgn(0) = +1, so a negative alpha rotates fully to theta = pi/2.
    return alpha < 0.0 ? std::numbers::pi / 2.0 : 0.0;
  }
  return 0.5 * std::atan2(beta, alpha);
}

std::vector<ModeData> mode_data(const ModelSpec& spec, Sector sector) {
  const int n_sites = spec.sites();
  std::vector<ModeData> modes(static_cast<std::size_t>(n_sites));
  for (int k = 0; k < n_sites; ++k) {
    ModeData& m = modes[static_cast<std::size_t>(k)];
    m.k = k;
    m.alpha = spec.field();
    m.beta = 0.0;
    for (const BlockSpec& b : spec.blocks()) {
      const double phase = block_phase(k, sector, b.mediators, n_sites);
      m.alpha -= b.strength * std::cos(phase);
      m.beta += (b.kind == BlockKind::X ? 1.0 : -1.0) * b.strength * std::sin(phase);
    }
    m.special = is_special(k, n_sites, sector);
    if (m.special) {
      m.partner = k;
      m.theta = 0.0;
      m.epsilon = 2.0 * m.alpha;
    } else {
      m.partner = sector == Sector::odd ? (n_sites - k) % n_sites : n_sites - k - 1;
      m.theta = bogoliubov_angle(m.alpha, m.beta);
      m.epsilon = 2.0 * std::hypot(m.alpha, m.beta);
    }
  }
  return modes;
}

ConstrainedMinimum parity_constrained_minimum(std::span<const ModeData> modes, Parity parity) {
  double energy = 0.0;
  for (const ModeData& m : modes) energy -= 0.5 * m.epsilon;

  std::vector<bool> occupied(modes.size(), false);
  std::size_t n_occupied = 0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i].epsilon < 0.0) {
      occupied[i] = true;
      ++n_occupied;
    }
  }
  const bool want_odd = parity == Parity::odd;
  if ((n_occupied % 2 == 1) != want_odd && !modes.empty()) {
    // Toggling mode i changes the energy by |eps_i|; pick the cheapest one.
    std::size_t best = 0;
    for (std::size_t i = 1; i < modes.size(); ++i) {
      if (std::abs(modes[i].epsilon) < std::abs(modes[best].epsilon)) best = i;
    }
    occupied[best] = !occupied[best];
  }

  ConstrainedMinimum out;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (occupied[i]) {
      energy += modes[i].epsilon;
      out.occupation.push_back(modes[i].k);
    }
  }
  out.energy = energy;
  return out;
}

std::vector<SectorLevel> sector_level_states(const ModelSpec& spec, Sector sector, int count) {
  const int n_sites = spec.sites();
  if (count < 1) {
    throw Error(Errc::invalid_argument, "level count must be positive");
  }
  if (n_sites <= 62 && static_cast<unsigned long long>(count) > (1ULL << (n_sites - 1))) {
    throw Error(Errc::count_exceeds_dimension,
                "requested " + std::to_string(count) + " levels from a sector of dimension 2^" +
                    std::to_string(n_sites - 1));
  }

  const std::vector<ModeData> modes = mode_data(spec, sector);
  const auto n = modes.size();

  // Unconstrained optimum: every negative-energy mode occupied. Any other occupation is
  // reached by a toggle set whose cost is the sum of |eps| over the toggled modes.
  double base = 0.0;
  std::vector<bool> base_occ(n, false);
  int base_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    base -= 0.5 * modes[i].epsilon;
    if (modes[i].epsilon < 0.0) {
      base += modes[i].epsilon;
      base_occ[i] = true;
      ++base_count;
    }
  }
  const bool want_odd = required_parity(sector) == Parity::odd;
  const bool need_odd_toggles = (base_count % 2 == 1) != want_odd;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(modes[a].epsilon) < std::abs(modes[b].epsilon);
  });
  std::vector<double> cost(n);
  for (std::size_t i = 0; i < n; ++i) cost[i] = std::abs(modes[order[i]].epsilon);

  // Toggle sets are enumerated in nondecreasing total cost. Each set is a chain of
  // positions in `order`; a node stores its last position and the node it extends.
  struct Node {
    std::size_t pos;
    long parent;
    int size;
  };
  std::vector<Node> nodes;
  struct Entry {
    double cost;
    long node;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    return a.cost != b.cost ? a.cost > b.cost : a.node > b.node;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

  std::vector<SectorLevel> levels;
  auto record = [&](double toggle_cost, long node) {
    std::vector<bool> occ = base_occ;
    for (long id = node; id >= 0; id = nodes[static_cast<std::size_t>(id)].parent) {
      const std::size_t mode = order[nodes[static_cast<std::size_t>(id)].pos];
      occ[mode] = !occ[mode];
    }
    SectorLevel level;
    level.energy = base + toggle_cost;
    for (std::size_t i = 0; i < n; ++i) {
      if (occ[i]) level.occupation.push_back(modes[i].k);
    }
    levels.push_back(std::move(level));
  };

  if (!need_odd_toggles) record(0.0, -1);
  if (n > 0) {
    nodes.push_back({0, -1, 1});
    heap.push({cost[0], 0});
  }
  constexpr long kMaxPops = 20'000'000;
  long pops = 0;
  while (static_cast<int>(levels.size()) < count) {
    if (heap.empty() || ++pops > kMaxPops) {
      throw Error(Errc::count_exceeds_dimension, "level enumeration exhausted before reaching the requested count");
    }
    const Entry top = heap.top();
    heap.pop();
    const Node node = nodes[static_cast<std::size_t>(top.node)];
    if ((node.size % 2 == 1) == need_odd_toggles) record(top.cost, top.node);
    if (node.pos + 1 < n) {
      const std::size_t next = node.pos + 1;
      nodes.push_back({next, top.node, node.size + 1});
      heap.push({top.cost + cost[next], static_cast<long>(nodes.size() - 1)});
      nodes.push_back({next, node.parent, node.size});
      heap.push({top.cost - cost[node.pos] + cost[next], static_cast<long>(nodes.size() - 1)});
    }
  }
  return levels;
}

std::vector<double> sector_levels(const ModelSpec& spec, Sector sector, int count) {
  std::vector<double> energies;
  for (const SectorLevel& l : sector_level_states(spec, sector, count)) energies.push_back(l.energy);
  return energies;
}

SectorSolution solve_sector(const ModelSpec& spec, Sector sector) {
  std::vector<SectorLevel> levels = sector_level_states(spec, sector, 2);
  SectorSolution s;
  s.sector = sector;
  s.energy = levels[0].energy;
  s.occupation = std::move(levels[0].occupation);
  s.second_energy = std::max(levels[1].energy, s.energy);
  s.degenerate = nearly_equal_levels(s.energy, s.second_energy);
  return s;
}

GroundReport ground_and_gap(const ModelSpec& spec) {
  GroundReport r;
  r.odd = solve_sector(spec, Sector::odd);
  r.even = solve_sector(spec, Sector::even);

  const bool even_wins = r.even.energy <= r.odd.energy || nearly_equal_levels(r.even.energy, r.odd.energy);
  r.ground_sector = even_wins ? Sector::even : Sector::odd;

  std::array<double, 4> merged{r.odd.energy, r.odd.second_energy, r.even.energy, r.even.second_energy};
  std::sort(merged.begin(), merged.end());
  r.ground_energy = merged[0];
  r.first_excited = merged[1];
  r.gap = std::max(0.0, r.first_excited - r.ground_energy);
  r.degenerate = nearly_equal_levels(r.ground_energy, r.first_excited);
  r.even_vacuum = even_wins && r.even.occupation.empty();
  return r;
}

std::vector<double> even_vacuum_angles(const ModelSpec& spec) {
  if (spec.sites() % 2 != 0) {
    throw Error(Errc::odd_sites, "even-vacuum angles need an even number of sites");
  }
  const std::vector<ModeData> modes = mode_data(spec, Sector::even);
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(spec.sites() / 2));
  for (int k = 0; k < spec.sites() / 2; ++k) angles.push_back(modes[static_cast<std::size_t>(k)].theta);
  return angles;
}

}  // namespace cxy
