#pragma once

#include <string>

#include <json.hpp>

#include "qnil/module_builder.hpp"

namespace qnil {

Convention parse_convention(const std::string& s);
GhostMode parse_ghosts(const std::string& s);
std::string to_string(GhostMode g);

nlohmann::json spec_to_json(const ModuleSpec& s);
// Throws ParseError on malformed input.
ModuleSpec spec_from_json(const nlohmann::json& j);

// {"spec", "l", "shape", "generators": {"e1": [[col, row, ["p/q", ...]], ...], ...}}
// Custom (perturbed) parameter tables are not serialized; the matrices are.
nlohmann::json to_json(const GeneratorSet& g);
GeneratorSet generators_from_json(const nlohmann::json& j);

void save(const GeneratorSet& g, const std::string& path);
GeneratorSet load(const std::string& path);

}  // namespace qnil
