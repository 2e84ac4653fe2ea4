#include "clusterxy/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "clusterxy/error.hpp"

namespace cxy {

namespace {

using nlohmann::json;

BlockKind parse_kind(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "x" || s == "X") return BlockKind::X;
  if (s == "y" || s == "Y") return BlockKind::Y;
  throw Error(Errc::invalid_argument, "block kind must be \"x\" or \"y\", got \"" + s + "\"");
}

}  // namespace

ModelSpec parse_model_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::invalid_argument, std::string("model document is not valid JSON: ") + e.what());
  }
  try {
    const int sites = doc.at("sites").get<int>();
    const double field = doc.at("field").get<double>();
    std::vector<BlockSpec> blocks;
    if (doc.contains("blocks")) {
      for (const json& jb : doc.at("blocks")) {
        blocks.push_back({parse_kind(jb.at("kind")), jb.at("strength").get<double>(), jb.at("mediators").get<int>()});
      }
    }
    return make_model(sites, field, std::move(blocks));
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("malformed model document: ") + e.what());
  }
}

ModelSpec load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::invalid_argument, "cannot open model file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_json(buf.str());
}

std::string model_to_json(const ModelSpec& spec) {
  json doc;
  doc["sites"] = spec.sites();
  doc["field"] = spec.field();
  doc["blocks"] = json::array();
  for (const BlockSpec& b : spec.blocks()) {
    doc["blocks"].push_back(
        {{"kind", b.kind == BlockKind::X ? "x" : "y"}, {"strength", b.strength}, {"mediators", b.mediators}});
  }
  return doc.dump(2);
}

}  // namespace cxy
