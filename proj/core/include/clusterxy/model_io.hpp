#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "clusterxy/model.hpp"

namespace cxy {

// Model-definition documents:
//   {"sites": 8, "field": 1.0,
//    "blocks": [{"kind": "x", "strength": 0.75, "mediators": 1}, ...]}

/// Parses and validates a model document. Malformed JSON or missing fields raise
/// cxy::Error(invalid_argument); model invariants raise the make_model errors.
ModelSpec parse_model_json(std::string_view text);
ModelSpec load_model_file(const std::filesystem::path& path);
std::string model_to_json(const ModelSpec& spec);

}  // namespace cxy
