#pragma once

// Internal JSON (de)serialization shared by the catalog, scenario and metrics
// writers. Not installed as a public header.

#include <string>

#include "edgesim/scenario.hpp"
#include "edgesim/workload.hpp"
#include "json.hpp"

namespace edgesim::detail {

using nlohmann::json;

json catalog_json(const ModelCatalog& catalog);
ModelCatalog catalog_from(const json& j);
json network_json(const Network& net);
Network network_from(const json& j);
json request_json(const Request& r);
Request request_from(const json& j);
json config_json(const WorkloadConfig& c);
WorkloadConfig config_from(const json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Typed lookup with a readable error instead of nlohmann's type_error.
template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->template get<T>();
}

}  // namespace edgesim::detail
