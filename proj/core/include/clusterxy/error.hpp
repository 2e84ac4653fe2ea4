#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cxy {

/// Failure categories raised by the library. Every thrown cxy::Error carries one.
enum class Errc {
  invalid_size,
  block_too_long,
  invalid_block,
  non_finite_parameter,
  count_exceeds_dimension,
  odd_sites,
  not_even_vacuum,
  size_guard,
  dimension_mismatch,
  non_uniform_grid,
  invalid_argument,
  quadrature_failure,
  optimizer_failure,
};

std::string_view to_string(Errc code) noexcept;

/// True for errors caused by bad inputs, false for numerical breakdowns.
bool is_validation_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cxy
