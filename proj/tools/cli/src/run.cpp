#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "clusterxy/error.hpp"
#include "clusterxy_cli/cli.hpp"

namespace cxy::cli {

namespace {

struct Options {
  ScanRequest request;
  std::string model = "xzy";
  std::string model_file;
  std::string sweep;
  std::string out;
  std::string format = "csv";
};

void add_scan_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--model", o.model, "Preset name (see `presets`)");
  cmd.add_option("--model-file", o.model_file, "JSON model definition")->check(CLI::ExistingFile);
  cmd.add_option("--r", o.request.model.r, "Anisotropy r");
  cmd.add_option("--h", o.request.model.h, "Transverse field h");
  cmd.add_option("--g", o.request.model.g, "GHZ-cluster parameter g");
  cmd.add_option("--lambda", o.request.model.lambda, "SPT-AFM coupling lambda");
  cmd.add_option("--n", o.request.model.n, "X-block mediators for xnmy");
  cmd.add_option("--m", o.request.model.m, "Y-block mediators for xnmy");
  cmd.add_flag("--halfway", o.request.model.halfway, "Halfway variant of spt-afm");
  cmd.add_option("--sites", o.request.sites, "Chain sizes")->delimiter(',');
  cmd.add_option("--sweep", o.sweep, "param:start:stop:step (inclusive)");
  cmd.add_option("--quantities", o.request.quantities, "gap,levels,ent_site,ent_block,ent_af,derivative")
      ->delimiter(',');
  cmd.add_option("--levels", o.request.levels, "Levels per sector for spectrum");
  cmd.add_option("--out", o.out, "Output file (default: stdout)");
  cmd.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd.add_option("--jobs", o.request.jobs, "Concurrent sweep points")->check(CLI::PositiveNumber);
}

void finalize(Options& o) {
  o.request.model.preset = o.model;
  if (!o.model_file.empty()) o.request.model.file = o.model_file;
  if (!o.sweep.empty()) o.request.sweep = parse_sweep(o.sweep);
}

void emit(const Table& table, const Options& o, std::ostream& out) {
  const std::string text = render(table, o.format == "json" ? Format::json : Format::csv);
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw Error(Errc::invalid_argument, "cannot open output file '" + o.out + "'");
  file << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free-fermion spectra, gaps and geometric entanglement of cluster-XY spin chains", "cxy"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> check_presets;

  CLI::App* spectrum = app.add_subcommand("spectrum", "Lowest levels of each parity sector");
  CLI::App* gap = app.add_subcommand("gap-scan", "Ground energy and gap");
  CLI::App* ent = app.add_subcommand("ent-scan", "Geometric entanglement densities");
  CLI::App* thermo = app.add_subcommand("thermo", "Infinite-chain block entanglement density");
  for (CLI::App* cmd : {spectrum, gap, ent, thermo}) add_scan_options(*cmd, o);
  CLI::App* check = app.add_subcommand("check", "Cross-check analytic results against exact diagonalization");
  check->add_option("--sites", o.request.sites, "Chain sizes (at most 10)")->delimiter(',');
  check->add_option("--presets", check_presets, "Subset of presets")->delimiter(',');
  check->add_option("--jobs", o.request.jobs, "Concurrent checks")->check(CLI::PositiveNumber);
  check->add_option("--out", o.out, "Output file (default: stdout)");
  check->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  CLI::App* presets = app.add_subcommand("presets", "List model presets");
  presets->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    finalize(o);
    if (spectrum->parsed()) emit(cmd_spectrum(o.request), o, out);
    if (gap->parsed()) emit(cmd_gap_scan(o.request), o, out);
    if (ent->parsed()) emit(cmd_ent_scan(o.request), o, out);
    if (thermo->parsed()) emit(cmd_thermo(o.request), o, out);
    if (presets->parsed()) emit(cmd_presets(), o, out);
    if (check->parsed()) {
      CheckOptions opts;
      if (!o.request.sites.empty()) opts.sites = o.request.sites;
      opts.presets = check_presets;
      opts.jobs = o.request.jobs;
      const CheckReport report = cmd_check(opts);
      emit(report.table, o, out);
      if (report.failures > 0) {
        err << "check: " << report.failures << " failing checks\n";
        return kExitCheckFailed;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_validation_error(e.code()) ? kExitValidation : kExitNumerical;
  }
  return kExitOk;
}

}  // namespace cxy::cli
