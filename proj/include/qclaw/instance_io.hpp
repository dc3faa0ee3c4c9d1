#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qclaw/oracle.hpp"

namespace qclaw {

using Instance = std::variant<FunctionInstance, GraphInstance>;

// {"kind":"function","n":N,"ordered":bool,"values":[...]} or
// {"kind":"graph","n":n,"edges":[[u,v],...]}. Invariant violations throw.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);

// A file holds one instance object or an array of them.
std::vector<Instance> load_instances(const std::filesystem::path& path);
void save_instances(const std::filesystem::path& path, const std::vector<Instance>& instances);

}  // namespace qclaw
