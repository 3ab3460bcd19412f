#include "qnil/serialize.hpp"

#include <fstream>

#include "qnil/errors.hpp"

namespace qnil {

Convention parse_convention(const std::string& s) {
  if (s == "corrected") return Convention::Corrected;
  if (s == "printed") return Convention::Printed;
  throw ParseError("unknown convention '" + s + "' (corrected|printed)");
}

GhostMode parse_ghosts(const std::string& s) {
  if (s == "closed") return GhostMode::Closed;
  if (s == "raw") return GhostMode::Raw;
  throw ParseError("unknown ghost mode '" + s + "' (closed|raw)");
}

std::string to_string(GhostMode g) { return g == GhostMode::Closed ? "closed" : "raw"; }

nlohmann::json spec_to_json(const ModuleSpec& s) {
  return {{"family", std::string(1, family_char(s.family))},
          {"n", s.n},
          {"k", s.k},
          {"lambda", s.lambda},
          {"l", s.l},
          {"convention", to_string(s.convention)},
          {"dvariant", to_string(s.dvariant)},
          {"ghosts", to_string(s.ghosts)},
          {"custom_params", s.params.has_value()}};
}

ModuleSpec spec_from_json(const nlohmann::json& j) {
  try {
    ModuleSpec s;
    s.family = parse_family(j.at("family").get<std::string>());
    s.n = j.at("n").get<int>();
    s.k = j.at("k").get<int>();
    s.lambda = j.at("lambda").get<std::vector<long>>();
    s.l = j.at("l").get<int>();
    s.convention = parse_convention(j.value("convention", "corrected"));
    s.dvariant = parse_dvariant(j.value("dvariant", "swap"));
    s.ghosts = parse_ghosts(j.value("ghosts", "closed"));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad spec: ") + e.what());
  }
}

nlohmann::json to_json(const GeneratorSet& g) {
  nlohmann::json gens = nlohmann::json::object();
  auto dump = [&](const std::string& name, const SparseOp& op) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::uint64_t c = 0; c < op.dim(); ++c)
      for (auto e = op.col_begin(c); e < op.col_end(c); ++e)
        entries.push_back({c, op.row(e), op.value(e).to_strings()});
    gens[name] = std::move(entries);
  };
  for (int i = 1; i <= g.rank(); ++i) {
    dump("e" + std::to_string(i), g.e[i - 1]);
    dump("f" + std::to_string(i), g.f[i - 1]);
    dump("t" + std::to_string(i), g.t[i - 1]);
  }
  return {{"spec", spec_to_json(g.spec)}, {"l", g.spec.l}, {"shape", g.shape.labels()}, {"generators", gens}};
}

GeneratorSet generators_from_json(const nlohmann::json& j) {
  GeneratorSet g;
  g.spec = spec_from_json(j.at("spec"));
  g.spec.validate();
  if (j.at("l").get<int>() != g.spec.l) throw ParseError("top-level l disagrees with spec");
  g.field = &Field::get(g.spec.l);
  g.shape = shape_for(g.spec.family, g.spec.n, g.spec.k, g.spec.l);
  g.cartan = cartan(g.spec.family, g.spec.rank());
  if (j.at("shape").get<std::vector<std::string>>() != g.shape.labels()) throw ParseError("shape labels disagree with spec");
  const std::uint64_t dim = g.dim();
  auto read = [&](const std::string& name) {
    const auto& entries = j.at("generators").at(name);
    std::vector<SparseVec> cols(dim);
    for (const auto& en : entries) {
      auto c = en.at(0).get<std::uint64_t>(), r = en.at(1).get<std::uint64_t>();
      if (c >= dim || r >= dim) throw ParseError(name + ": index out of range");
      auto x = CycloNum::from_strings(*g.field, en.at(2).get<std::vector<std::string>>());
      cols[c].emplace_back(r, std::move(x));
    }
    for (auto& col : cols) {
      std::size_t before = col.size();
      canonicalize(col);
      if (col.size() != before) throw ParseError(name + ": duplicate or zero entries");
    }
    return SparseOp::from_columns(*g.field, std::move(cols));
  };
  try {
    for (int i = 1; i <= g.spec.rank(); ++i) {
      g.e.push_back(read("e" + std::to_string(i)));
      g.f.push_back(read("f" + std::to_string(i)));
      g.t.push_back(read("t" + std::to_string(i)));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad generator data: ") + e.what());
  }
  finish_torus(g);
  return g;
}

void save(const GeneratorSet& g, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  os << to_json(g).dump() << '\n';
}

GeneratorSet load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot read " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return generators_from_json(j);
}

}  // namespace qnil
