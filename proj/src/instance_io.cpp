#include "qclaw/instance_io.hpp"

#include <fstream>

#include "qclaw/errors.hpp"

namespace qclaw {

using nlohmann::json;

Instance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw DomainError("instance: expected an object with \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "function") {
    auto values = j.at("values").get<std::vector<Value>>();
    const auto n = j.at("n").get<std::uint64_t>();
    if (values.size() != n) throw DomainError("instance: \"n\" does not match the number of values");
    return FunctionInstance(std::move(values), j.value("ordered", false));
  }
  if (kind == "graph") {
    const auto n = j.at("n").get<std::uint64_t>();
    std::vector<std::pair<Index, Index>> edges;
    for (const json& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw DomainError("instance: edge must be [u,v]");
      const auto u = e[0].get<std::int64_t>(), v = e[1].get<std::int64_t>();
      if (u < 1 || v < 1) throw DomainError("instance: node ids are 1-based");
      edges.emplace_back(static_cast<Index>(u), static_cast<Index>(v));
    }
    return GraphInstance(n, edges);
  }
  throw DomainError("instance: unknown kind \"" + kind + "\"");
}

json instance_to_json(const Instance& inst) {
  if (const auto* f = std::get_if<FunctionInstance>(&inst)) {
    return {{"kind", "function"},
            {"n", f->size()},
            {"ordered", f->ordered()},
            {"values", std::vector<Value>(f->values().begin(), f->values().end())}};
  }
  const auto& g = std::get<GraphInstance>(inst);
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"kind", "graph"}, {"n", g.node_count()}, {"edges", edges}};
}

std::vector<Instance> load_instances(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open instance file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DomainError("instance file " + path.string() + ": " + e.what());
  }
  std::vector<Instance> out;
  try {
    if (j.is_array()) {
      for (const json& item : j) out.push_back(instance_from_json(item));
    } else {
      out.push_back(instance_from_json(j));
    }
  } catch (const json::exception& e) {
    throw DomainError("instance file " + path.string() + ": " + e.what());
  }
  return out;
}

void save_instances(const std::filesystem::path& path, const std::vector<Instance>& instances) {
  json j = json::array();
  for (const Instance& inst : instances) j.push_back(instance_to_json(inst));
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << (instances.size() == 1 ? j[0] : j).dump() << '\n';
}

}  // namespace qclaw
