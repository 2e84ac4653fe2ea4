#include <cmath>
#include <random>

#include "clusterxy/entanglement.hpp"
#include "clusterxy/error.hpp"
#include "clusterxy/freefermion.hpp"
#include "clusterxy/oracle.hpp"
#include "clusterxy_cli/cli.hpp"
#include "parallel.hpp"

namespace cxy::cli {

namespace {

constexpr int kMaxCheckSites = 10;
constexpr double kEnergyTol = 1e-9;
constexpr double kFidelityTol = 1e-9;
constexpr double kOverlapTol = 1e-9;
constexpr int kRandomAnsaetze = 5;

struct CheckPreset {
  std::string name;
  ModelSource source;
  Sweep sweep;
};

std::vector<CheckPreset> check_presets() {
  auto make = [](std::string name, std::string preset, Sweep sweep, auto&& tweak) {
    ModelSource s;
    s.preset = std::move(preset);
    tweak(s);
    return CheckPreset{std::move(name), s, sweep};
  };
  const Sweep h_sweep{"h", -1.5, 1.5, 0.3};
  const Sweep g_sweep{"g", -2.0, 2.0, 0.4};
  const Sweep l_sweep{"lambda", -2.0, 2.0, 0.4};
  auto none = [](ModelSource&) {};
  return {
      make("xy", "xy", h_sweep, none),
      make("xzy", "xzy", h_sweep, none),
      make("xnmy", "xnmy", h_sweep, [](ModelSource& s) { s.n = s.m = 2; }),
      make("halfway-xy", "halfway-xy", h_sweep, none),
      make("ghz-cluster", "ghz-cluster", g_sweep, none),
      make("spt-afm", "spt-afm", l_sweep, none),
      make("spt-afm-halfway", "spt-afm", l_sweep, [](ModelSource& s) { s.halfway = true; }),
  };
}

struct Outcome {
  std::string check;
  std::string status;
  double deviation;
};

std::vector<Outcome> check_point(const ModelSpec& spec, const CheckOptions& options, std::uint64_t seed) {
  std::vector<Outcome> out;
  auto record = [&](std::string name, double deviation, double tol) {
    out.push_back({std::move(name), deviation <= tol ? "pass" : "fail", deviation});
  };
  const oracle::DenseOperator h = oracle::dense_hamiltonian(spec);
  const GroundReport report = ground_and_gap(spec);
  const std::vector<double> exact = oracle::exact_spectrum(h, 2);
  record("ground-energy", std::abs(exact[0] - report.ground_energy), kEnergyTol);
  record("gap", std::abs((exact[1] - exact[0]) - report.gap), kEnergyTol);

  if (!report.even_vacuum || report.degenerate || spec.sites() % 2 != 0) {
    out.push_back({"state-fidelity", "skip", 0.0});
    out.push_back({"overlap-site", "skip", 0.0});
    out.push_back({"overlap-block", "skip", 0.0});
    return out;
  }
  std::vector<double> angles = even_vacuum_angles(spec);
  if (options.angle_mutator) options.angle_mutator(angles);
  const oracle::StateVector ground = oracle::exact_ground_state(h);
  const oracle::StateVector vacuum = oracle::even_vacuum_state(angles, spec.sites());
  record("state-fidelity", 1.0 - std::norm(oracle::inner(vacuum, ground)), kFidelityTol);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> xi_dist(0.0, std::numbers::pi);
  std::normal_distribution<double> gauss;
  double site_dev = 0.0;
  double block_dev = 0.0;
  for (int i = 0; i < kRandomAnsaetze; ++i) {
    const double xi = xi_dist(rng);
    site_dev = std::max(site_dev, std::abs(std::abs(overlap_site(angles, xi, spec.sites())) -
                                           oracle::direct_overlap(ground, SiteAnsatz{xi})));
    const BlockAnsatz b = BlockAnsatz{gauss(rng), gauss(rng), gauss(rng), gauss(rng)}.normalized();
    block_dev = std::max(block_dev, std::abs(std::abs(overlap_block(angles, b, spec.sites())) -
                                             oracle::direct_overlap(ground, b)));
  }
  record("overlap-site", site_dev, kOverlapTol);
  record("overlap-block", block_dev, kOverlapTol);
  return out;
}

}  // namespace

CheckReport cmd_check(const CheckOptions& options) {
  for (int s : options.sites) {
    if (s > kMaxCheckSites) {
      throw Error(Errc::size_guard, "check is limited to " + std::to_string(kMaxCheckSites) + " sites, got " +
                                        std::to_string(s));
    }
  }
  std::vector<CheckPreset> presets;
  for (CheckPreset& p : check_presets()) {
    if (options.presets.empty() ||
        std::find(options.presets.begin(), options.presets.end(), p.name) != options.presets.end()) {
      presets.push_back(std::move(p));
    }
  }
  if (presets.empty()) throw Error(Errc::invalid_argument, "no known preset selected for check");

  struct Job {
    const CheckPreset* preset;
    int sites;
    double value;
  };
  std::vector<Job> jobs;
  for (const CheckPreset& p : presets) {
    for (int s : options.sites) {
      for (double v : p.sweep.points()) jobs.push_back({&p, s, v});
    }
  }
  using Rows = std::vector<std::vector<Cell>>;
  const auto blocks = parallel_map<Rows>(jobs.size(), options.jobs, [&](std::size_t i) {
    const Job& job = jobs[i];
    const ModelSpec spec = resolve_model(job.preset->source, job.preset->sweep.parameter, job.value, job.sites);
    Rows rows;
    for (const Outcome& o : check_point(spec, options, 0x5eed0000ULL + i)) {
      rows.push_back({job.preset->name, job.preset->sweep.parameter, job.value, static_cast<long long>(job.sites),
                      o.check, o.status, o.deviation, describe(spec)});
    }
    return rows;
  });

  CheckReport report;
  report.table.comments = {"command=check"};
  report.table.columns = {"preset", "parameter", "value", "sites", "check", "status", "deviation", "model"};
  for (const Rows& b : blocks) {
    for (const auto& row : b) {
      if (std::get<std::string>(row[5]) == "fail") ++report.failures;
      report.table.rows.push_back(row);
    }
  }
  report.table.comments.push_back("failures=" + std::to_string(report.failures));
  return report;
}

}  // namespace cxy::cli
