#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "clusterxy/model.hpp"

namespace cxy::cli {

// ---- Tables ---------------------------------------------------------------

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::vector<std::string> comments;  // resolved request, one line each
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, json };

/// Doubles use 17 significant digits; empty cells stay empty in CSV and null in JSON.
std::string format_number(double value);
std::string render(const Table& table, Format format);

// ---- Requests -------------------------------------------------------------

struct ModelSource {
  std::string preset = "xzy";  // see preset_names()
  std::optional<std::filesystem::path> file;
  double r = 0.5;
  double h = 0.5;
  double g = 0.5;
  double lambda = 0.5;
  int n = 1;
  int m = 1;
  bool halfway = false;
};

std::vector<std::string> preset_names();

/// Sweep over one model parameter; start + i step with the last point clamped to stop
/// when within step/2. A single-point sweep has start == stop.
struct Sweep {
  std::string parameter = "h";
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
};

/// Parses "param:start:stop:step"; requires step > 0 and start < stop.
Sweep parse_sweep(const std::string& text);

struct ScanRequest {
  ModelSource model;
  std::optional<Sweep> sweep;  // defaults to the preset's primary parameter at its value
  std::vector<int> sites;  // empty: 8, or the model file's size
  std::vector<std::string> quantities;
  int levels = 4;
  int jobs = 1;
};

/// The model at one sweep value and size. Throws cxy::Error for unknown presets or
/// sweep parameters that the source does not have.
ModelSpec resolve_model(const ModelSource& source, const std::string& parameter, double value, int sites);
std::string primary_parameter(const ModelSource& source);
Sweep effective_sweep(const ScanRequest& request);

// ---- Commands -------------------------------------------------------------

Table cmd_spectrum(const ScanRequest& request);
Table cmd_gap_scan(const ScanRequest& request);
Table cmd_ent_scan(const ScanRequest& request);
Table cmd_thermo(const ScanRequest& request);
Table cmd_presets();

struct CheckOptions {
  std::vector<int> sites{8};
  std::vector<std::string> presets;  // empty: every preset
  int jobs = 1;
  /// Applied to the analytic angles before the spin-basis reconstruction.
  std::function<void(std::vector<double>&)> angle_mutator;
};

struct CheckReport {
  Table table;
  int failures = 0;
};

/// Oracle cross-check of energies, gaps, vacuum fidelity and overlap formulas on each
/// preset's default grid. Throws size-guard above 10 sites.
CheckReport cmd_check(const CheckOptions& options);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitCheckFailed = 4;

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cxy::cli
