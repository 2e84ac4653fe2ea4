#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "clusterxy/entanglement.hpp"
#include "clusterxy/error.hpp"
#include "clusterxy/freefermion.hpp"
#include "clusterxy/model_io.hpp"
#include "clusterxy/numerics.hpp"
#include "clusterxy_cli/cli.hpp"
#include "parallel.hpp"

namespace cxy::cli {

namespace {

const std::vector<std::string> kQuantities{"gap", "levels", "ent_site", "ent_block", "ent_af", "derivative"};

bool has(const std::vector<std::string>& list, const std::string& item) {
  return std::find(list.begin(), list.end(), item) != list.end();
}

std::vector<std::string> preset_parameters(const ModelSource& s) {
  if (s.file) return {"h"};
  if (s.preset == "ghz-cluster") return {"g"};
  if (s.preset == "spt-afm") return {"lambda"};
  if (s.preset == "free-field") return {"h"};
  return {"r", "h"};
}

double parameter_value(const ModelSource& s, const std::string& name) {
  if (name == "r") return s.r;
  if (name == "h") return s.h;
  if (name == "g") return s.g;
  if (name == "lambda") return s.lambda;
  throw Error(Errc::invalid_argument, "unknown sweep parameter '" + name + "'");
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::vector<int> effective_sites(const ScanRequest& request) {
  if (!request.sites.empty()) return request.sites;
  if (request.model.file) return {load_model_file(*request.model.file).sites()};
  return {8};
}

std::vector<std::string> request_comments(const std::string& command, const ScanRequest& request) {
  const ModelSource& m = request.model;
  const Sweep sweep = effective_sweep(request);
  std::ostringstream source;
  if (m.file) {
    source << "model-file=" << m.file->string();
  } else {
    source << "model=" << m.preset << " r=" << format_number(m.r) << " h=" << format_number(m.h)
           << " g=" << format_number(m.g) << " lambda=" << format_number(m.lambda) << " n=" << m.n << " m=" << m.m
           << " halfway=" << (m.halfway ? "true" : "false");
  }
  std::vector<std::string> sites;
  for (int s : effective_sites(request)) sites.push_back(std::to_string(s));
  return {"command=" + command, source.str(),
          "sweep=" + sweep.parameter + ":" + format_number(sweep.start) + ":" + format_number(sweep.stop) + ":" +
              format_number(sweep.step),
          "sites=" + join(sites, ","), "quantities=" + join(request.quantities, ",")};
}

void validate_quantities(const std::vector<std::string>& quantities) {
  for (const std::string& q : quantities) {
    if (!has(kQuantities, q)) {
      throw Error(Errc::invalid_argument, "unknown quantity '" + q + "' (expected one of " + join(kQuantities, ", ") + ")");
    }
  }
}

struct GridPoint {
  int sites;
  double value;
};

std::vector<GridPoint> grid(const ScanRequest& request) {
  std::vector<GridPoint> points;
  const std::vector<double> values = effective_sweep(request).points();
  for (int s : effective_sites(request)) {
    for (double v : values) points.push_back({s, v});
  }
  return points;
}

Cell maybe(double v) { return std::isnan(v) ? Cell{} : Cell{v}; }

}  // namespace

std::vector<std::string> preset_names() {
  return {"xy", "xzy", "xnmy", "halfway-xy", "ghz-cluster", "spt-afm", "free-field"};
}

std::vector<double> Sweep::points() const {
  if (start == stop) return {start};
  std::vector<double> out;
  for (long long i = 0;; ++i) {
    const double p = start + static_cast<double>(i) * step;
    if (p >= stop - 0.5 * step) break;
    out.push_back(p);
  }
  out.push_back(stop);
  return out;
}

Sweep parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) {
    throw Error(Errc::invalid_argument, "sweep must be param:start:stop:step, got '" + text + "'");
  }
  Sweep s;
  s.parameter = parts[0];
  try {
    s.start = std::stod(parts[1]);
    s.stop = std::stod(parts[2]);
    s.step = std::stod(parts[3]);
  } catch (const std::exception&) {
    throw Error(Errc::invalid_argument, "sweep bounds must be numbers, got '" + text + "'");
  }
  if (!(s.step > 0.0) || !std::isfinite(s.step)) throw Error(Errc::invalid_argument, "sweep step must be positive");
  if (!(s.start < s.stop)) throw Error(Errc::invalid_argument, "sweep start must be below stop");
  return s;
}

std::string primary_parameter(const ModelSource& source) { return preset_parameters(source).back(); }

Sweep effective_sweep(const ScanRequest& request) {
  if (request.sweep) return *request.sweep;
  Sweep s;
  s.parameter = primary_parameter(request.model);
  s.start = s.stop = request.model.file ? load_model_file(*request.model.file).field()
                                        : parameter_value(request.model, s.parameter);
  return s;
}

ModelSpec resolve_model(const ModelSource& source, const std::string& parameter, double value, int sites) {
  if (!has(preset_parameters(source), parameter)) {
    throw Error(Errc::invalid_argument, "parameter '" + parameter + "' does not apply to " +
                                            (source.file ? std::string("model files") : source.preset));
  }
  if (source.file) {
    const ModelSpec base = load_model_file(*source.file);
    const std::vector<BlockSpec> blocks(base.blocks().begin(), base.blocks().end());
    return make_model(sites > 0 ? sites : base.sites(), value, blocks);
  }
  ModelSource s = source;
  if (parameter == "r") s.r = value;
  if (parameter == "h") s.h = value;
  if (parameter == "g") s.g = value;
  if (parameter == "lambda") s.lambda = value;
  if (s.preset == "xy") return preset_xnmy(0, 0, s.r, s.h, sites);
  if (s.preset == "xzy") return preset_xnmy(1, 1, s.r, s.h, sites);
  if (s.preset == "xnmy") return preset_xnmy(s.n, s.m, s.r, s.h, sites);
  if (s.preset == "halfway-xy") return preset_halfway_xy(s.r, s.h, sites);
  if (s.preset == "ghz-cluster") return preset_ghz_cluster(s.g, sites);
  if (s.preset == "spt-afm") return preset_spt_afm(s.lambda, sites, s.halfway);
  if (s.preset == "free-field") return make_model(sites, s.h, {});
  throw Error(Errc::invalid_argument, "unknown preset '" + s.preset + "' (expected one of " + join(preset_names(), ", ") + ")");
}

Table cmd_spectrum(const ScanRequest& request) {
  validate_quantities(request.quantities);
  if (request.levels < 1) throw Error(Errc::invalid_argument, "--levels must be positive");
  const Sweep sweep = effective_sweep(request);
  const std::vector<GridPoint> points = grid(request);
  using Rows = std::vector<std::vector<Cell>>;
  const auto blocks = parallel_map<Rows>(points.size(), request.jobs, [&](std::size_t i) {
    const ModelSpec spec = resolve_model(request.model, sweep.parameter, points[i].value, points[i].sites);
    const std::string model = describe(spec);
    Rows rows;
    for (Sector sector : {Sector::even, Sector::odd}) {
      const std::vector<SectorLevel> levels = sector_level_states(spec, sector, request.levels);
      for (std::size_t l = 0; l < levels.size(); ++l) {
        rows.push_back({points[i].value, static_cast<long long>(spec.sites()), std::string(to_string(sector)),
                        static_cast<long long>(l), levels[l].energy,
                        static_cast<long long>(levels[l].occupation.size()), model});
      }
    }
    return rows;
  });
  Table t;
  t.comments = request_comments("spectrum", request);
  t.columns = {sweep.parameter, "sites", "sector", "level", "energy", "occupation_size", "model"};
  for (const Rows& b : blocks) t.rows.insert(t.rows.end(), b.begin(), b.end());
  return t;
}

Table cmd_gap_scan(const ScanRequest& request) {
  validate_quantities(request.quantities);
  const Sweep sweep = effective_sweep(request);
  const std::vector<GridPoint> points = grid(request);
  Table t;
  t.comments = request_comments("gap-scan", request);
  t.columns = {sweep.parameter, "sites", "ground_energy", "first_excited", "gap", "ground_sector", "degenerate", "model"};
  t.rows = parallel_map<std::vector<Cell>>(points.size(), request.jobs, [&](std::size_t i) {
    const ModelSpec spec = resolve_model(request.model, sweep.parameter, points[i].value, points[i].sites);
    const GroundReport r = ground_and_gap(spec);
    return std::vector<Cell>{points[i].value,
                             static_cast<long long>(spec.sites()),
                             r.ground_energy,
                             r.first_excited,
                             r.gap,
                             std::string(to_string(r.ground_sector)),
                             std::string(r.degenerate ? "true" : "false"),
                             describe(spec)};
  });
  return t;
}

Table cmd_ent_scan(const ScanRequest& request) {
  validate_quantities(request.quantities);
  std::vector<std::string> kinds;
  for (const char* k : {"ent_site", "ent_af", "ent_block"}) {
    if (has(request.quantities, k)) kinds.emplace_back(k);
  }
  if (kinds.empty()) kinds.emplace_back("ent_site");
  for (int s : effective_sites(request)) {
    if (s % 2 != 0) throw Error(Errc::odd_sites, "entanglement scans need an even number of sites, got " + std::to_string(s));
  }
  const bool want_gap = has(request.quantities, "gap");
  const bool want_derivative = has(request.quantities, "derivative");
  const bool need_all = has(kinds, "ent_af") || has(kinds, "ent_block");
  const Sweep sweep = effective_sweep(request);
  const std::vector<GridPoint> points = grid(request);

  struct PointResult {
    std::string model;
    std::string status;
    bool degenerate = false;
    double gap = 0.0;
    std::vector<double> densities;  // NaN when flagged
  };
  const auto results = parallel_map<PointResult>(points.size(), request.jobs, [&](std::size_t i) {
    const ModelSpec spec = resolve_model(request.model, sweep.parameter, points[i].value, points[i].sites);
    PointResult r;
    r.model = describe(spec);
    r.status = "ok";
    r.densities.assign(kinds.size(), std::numeric_limits<double>::quiet_NaN());
    if (want_gap) r.gap = ground_and_gap(spec).gap;
    try {
      EntanglementTriple t;
      if (need_all) {
        t = maximize_all(spec);
      } else {
        t.site = maximize_site(spec);
      }
      r.degenerate = t.site.degenerate;
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        r.densities[k] = kinds[k] == "ent_site" ? t.site.density
                         : kinds[k] == "ent_af" ? t.af_site.density
                                                : t.block.density;
      }
    } catch (const Error& e) {
      if (e.code() != Errc::not_even_vacuum) throw;
      r.status = to_string(e.code());
    }
    return r;
  });

  // Derivatives along each size's sweep, over maximal runs of unflagged points.
  const std::size_t per_size = sweep.points().size();
  std::vector<std::vector<double>> derivatives(kinds.size(), std::vector<double>(points.size(), std::numeric_limits<double>::quiet_NaN()));
  if (want_derivative) {
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      for (std::size_t base = 0; base < points.size(); base += per_size) {
        std::size_t i = base;
        while (i < base + per_size) {
          if (std::isnan(results[i].densities[k])) {
            ++i;
            continue;
          }
          std::size_t j = i;
          while (j < base + per_size && !std::isnan(results[j].densities[k])) ++j;
          if (j - i >= 3) {
            std::vector<double> xs, ys;
            for (std::size_t p = i; p < j; ++p) {
              xs.push_back(points[p].value);
              ys.push_back(results[p].densities[k]);
            }
            const std::vector<double> d = numerics::scan_derivative(xs, ys);
            for (std::size_t p = i; p < j; ++p) derivatives[k][p] = d[p - i];
          }
          i = j;
        }
      }
    }
  }

  Table t;
  t.comments = request_comments("ent-scan", request);
  t.columns = {sweep.parameter, "sites", "status", "degenerate"};
  if (want_gap) t.columns.emplace_back("gap");
  for (const std::string& k : kinds) t.columns.push_back("density_" + k.substr(4));
  if (want_derivative) {
    for (const std::string& k : kinds) t.columns.push_back("d_density_" + k.substr(4));
  }
  t.columns.emplace_back("model");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const PointResult& r = results[i];
    std::vector<Cell> row{points[i].value, static_cast<long long>(points[i].sites), r.status,
                          std::string(r.degenerate ? "true" : "false")};
    if (want_gap) row.emplace_back(r.gap);
    for (double d : r.densities) row.push_back(maybe(d));
    if (want_derivative) {
      for (std::size_t k = 0; k < kinds.size(); ++k) row.push_back(maybe(derivatives[k][i]));
    }
    row.emplace_back(r.model);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_thermo(const ScanRequest& request) {
  validate_quantities(request.quantities);
  const ModelSource& m = request.model;
  if (!m.file && (m.preset == "halfway-xy" || (m.preset == "spt-afm" && m.halfway))) {
    throw Error(Errc::invalid_argument, "the thermodynamic limit needs mediator counts that do not grow with the chain");
  }
  const Sweep sweep = effective_sweep(request);
  const std::vector<double> values = sweep.points();
  const int reference_sites = effective_sites(request).front();
  Table t;
  t.comments = request_comments("thermo", request);
  t.comments.emplace_back("infinite chain; the model column uses sites=" + std::to_string(reference_sites) +
                          " only to resolve the couplings");
  t.comments.emplace_back("density_block = -(1/pi) max integral; density_block_prefactor4 = -4 max integral");
  t.columns = {sweep.parameter, "status", "density_block", "density_block_prefactor4", "quadrature_error",
               "a", "b", "c", "d", "model"};
  t.rows = parallel_map<std::vector<Cell>>(values.size(), request.jobs, [&](std::size_t i) {
    const ModelSpec spec = resolve_model(m, sweep.parameter, values[i], reference_sites);
    try {
      const ThermoResult r = thermo_block_density(theta_of_momentum(spec));
      return std::vector<Cell>{values[i], std::string("ok"), r.density, 4.0 * std::numbers::pi * r.density,
                               r.quadrature_error, r.optimum.a,
                               r.optimum.b, r.optimum.c, r.optimum.d, describe(spec)};
    } catch (const Error& e) {
      if (is_validation_error(e.code())) throw;
      return std::vector<Cell>{values[i], std::string(to_string(e.code())), {}, {}, {}, {}, {}, {}, {}, describe(spec)};
    }
  });
  return t;
}

Table cmd_presets() {
  Table t;
  t.comments = {"command=presets"};
  t.columns = {"preset", "parameters", "blocks"};
  t.rows = {
      {std::string("xy"), std::string("r h"), std::string("X (1+r)/2 n=0; Y (1-r)/2 m=0")},
      {std::string("xzy"), std::string("r h"), std::string("X (1+r)/2 n=1; Y (1-r)/2 m=1")},
      {std::string("xnmy"), std::string("r h n m"), std::string("X (1+r)/2 n; Y (1-r)/2 m")},
      {std::string("halfway-xy"), std::string("r h"), std::string("X (1+r)/2 and Y (1-r)/2 with N/2-1 mediators")},
      {std::string("ghz-cluster"), std::string("g"), std::string("field (1+g)^2; X -2(g^2-1) n=0; X -(g-1)^2 n=1")},
      {std::string("spt-afm"), std::string("lambda [halfway]"), std::string("X 1 n=1 (or N/2-1); Y -lambda m=0; field 0")},
      {std::string("free-field"), std::string("h"), std::string("no blocks")},
  };
  return t;
}

}  // namespace cxy::cli
