#include "clusterxy/error.hpp"

namespace cxy {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_size: return "invalid-size";
    case Errc::block_too_long: return "block-too-long";
    case Errc::invalid_block: return "invalid-block";
    case Errc::non_finite_parameter: return "non-finite-parameter";
    case Errc::count_exceeds_dimension: return "count-exceeds-dimension";
    case Errc::odd_sites: return "odd-sites";
    case Errc::not_even_vacuum: return "ground-state-not-even-vacuum";
    case Errc::size_guard: return "size-guard";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::non_uniform_grid: return "non-uniform-grid";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::quadrature_failure: return "quadrature-failure";
    case Errc::optimizer_failure: return "optimizer-failure";
  }
  return "unknown";
}

bool is_validation_error(Errc code) noexcept {
  return code != Errc::quadrature_failure && code != Errc::optimizer_failure;
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace cxy
