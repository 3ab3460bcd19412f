// qnil: build and check nilpotent modules over Q(zeta_l) from the command line.
//
// Exit codes: 0 all reports pass, 1 some report failed, 2 usage or invalid
// configuration, 3 unsupported configuration or weight outside Z_l.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qnil/analysis.hpp"
#include "qnil/errors.hpp"
#include "qnil/module_builder.hpp"
#include "qnil/serialize.hpp"

using namespace qnil;
using nlohmann::json;

namespace {

struct Job {
  std::string family = "A";
  int rank = 1;
  int k = 1;
  std::string lambda;
  int l = 3;
  std::string dvariant = "swap";
  std::string convention = "corrected";
  std::string ghosts = "closed";
  std::string in, out;
  int threads = 0;
  std::uint64_t seed = 20240917;
  int samples = 3;
  bool oracle = true;
  bool timings = false;
  int level = 0;
  std::string nu = "0";
};

std::vector<long> parse_lambda(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("--lambda expects comma-separated integers, got '" + s + "'");
    }
  }
  return out;
}

ModuleSpec spec_of(const Job& j) {
  ModuleSpec s;
  s.family = parse_family(j.family);
  s.n = s.family == Family::G ? 2 : j.rank;
  if (s.family == Family::G && j.rank != 2) throw ShapeError("G2 has rank 2");
  s.k = j.k;
  s.lambda = parse_lambda(j.lambda);
  s.l = j.l;
  s.convention = parse_convention(j.convention);
  s.dvariant = parse_dvariant(j.dvariant);
  s.ghosts = parse_ghosts(j.ghosts);
  s.validate();
  return s;
}

GeneratorSet generators(const Job& j) {
  if (!j.in.empty()) return load(j.in);
  return build(spec_of(j), BuildOptions{true, j.threads});
}

// Drops every "seconds" field so that output bytes depend only on the job.
json strip(json r, bool timings) {
  if (timings) return r;
  if (r.is_object()) {
    r.erase("seconds");
    for (auto& [k, v] : r.items()) v = strip(v, false);
  } else if (r.is_array()) {
    for (auto& v : r) v = strip(v, false);
  }
  return r;
}

// Entry-by-entry comparison of two generator sets.
Report oracle_diff(const GeneratorSet& a, const GeneratorSet& b) {
  Report r;
  r.claim = "engine matrices equal closed-form matrices";
  r.pass = true;
  std::size_t entries = 0;
  auto cmp = [&](const std::string& name, const SparseOp& x, const SparseOp& y) {
    if (!r.pass) return;
    for (std::uint64_t c = 0; c < x.dim(); ++c)
      if (x.column(c) != y.column(c)) {
        r.pass = false;
        r.witness = name + " differs in column " + std::to_string(c);
        return;
      }
    entries += x.nnz();
  };
  for (int i = 0; i < a.rank(); ++i) {
    cmp("e" + std::to_string(i + 1), a.e[i], b.e[i]);
    cmp("f" + std::to_string(i + 1), a.f[i], b.f[i]);
    cmp("t" + std::to_string(i + 1), a.t[i], b.t[i]);
  }
  r.data["entries_compared"] = entries;
  return r;
}

int emit(const GeneratorSet& g, const std::vector<Report>& reports, bool timings) {
  json out = {{"spec", spec_to_json(g.spec)}, {"dim", g.dim()}, {"reports", strip(to_json(reports), timings)}};
  std::cout << out.dump(2) << '\n';
  return all_pass(reports) ? 0 : 1;
}

void common(CLI::App* sub, Job& j, bool needs_spec = true) {
  sub->add_option("--family", j.family, "A, B, C, D or G")->required(needs_spec);
  sub->add_option("--rank", j.rank, "rank n");
  sub->add_option("--k", j.k, "lowest represented level");
  sub->add_option("--lambda", j.lambda, "lambda_k,...,lambda_n");
  sub->add_option("--l", j.l, "order of the root of unity (odd, >= 3)");
  sub->add_option("--dvariant", j.dvariant, "type D raising-operator variant: swap, printed, e1");
  sub->add_option("--convention", j.convention, "parameter convention: corrected, printed");
  sub->add_option("--ghosts", j.ghosts, "ghost torus evaluation: closed, raw");
  sub->add_option("--threads", j.threads, "worker threads (default: QNIL_THREADS or all)");
  sub->add_flag("--timings", j.timings, "include timings in the JSON reports");
}

int run(int argc, char** argv) {
  CLI::App app{"nilpotent quantum-group modules at roots of unity"};
  app.require_subcommand(1);
  Job j;
  if (const char* env = std::getenv("QNIL_THREADS")) j.threads = std::atoi(env);
  if (const char* env = std::getenv("QNIL_SEED")) j.seed = std::strtoull(env, nullptr, 10);

  auto* build_cmd = app.add_subcommand("build", "build generator matrices and write them as JSON");
  common(build_cmd, j);
  build_cmd->add_option("--out", j.out, "output file")->required();

  auto* verify_cmd = app.add_subcommand("verify", "check the defining relations");
  common(verify_cmd, j, false);
  verify_cmd->add_option("--in", j.in, "read generators from a JSON file instead of building");
  verify_cmd->add_flag("!--no-oracle", j.oracle, "skip the closed-form comparison for B and G");

  auto* prim_cmd = app.add_subcommand("primitive", "common kernel of the raising operators");
  common(prim_cmd, j, false);
  prim_cmd->add_option("--in", j.in, "generator JSON");
  auto* clos_cmd = app.add_subcommand("closure", "submodule generated by v^0");
  common(clos_cmd, j, false);
  clos_cmd->add_option("--in", j.in, "generator JSON");
  auto* char_cmd = app.add_subcommand("character", "weight multiplicities of the submodule generated by v^0");
  common(char_cmd, j, false);
  char_cmd->add_option("--in", j.in, "generator JSON");
  auto* cert_cmd = app.add_subcommand("certify", "certify irreducibility and identify the highest weight");
  common(cert_cmd, j, false);
  cert_cmd->add_option("--in", j.in, "generator JSON");
  cert_cmd->add_option("--seed", j.seed, "seed for the sampling check");
  cert_cmd->add_option("--samples", j.samples, "random vectors for the sampling check");

  auto* rho_cmd = app.add_subcommand("print-rho", "print the symbolic generator images of one level");
  rho_cmd->add_option("--family", j.family)->required();
  rho_cmd->add_option("--level", j.level, "level (G: 1 or 2)")->required();
  rho_cmd->add_option("--nu", j.nu, "weight shift entering G2 images, e.g. -3 or 1/2");
  rho_cmd->add_option("--dvariant", j.dvariant);
  rho_cmd->add_option("--convention", j.convention);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  for (auto* sub : {verify_cmd, prim_cmd, clos_cmd, char_cmd, cert_cmd})
    if (sub->parsed() && j.in.empty() && sub->count("--family") == 0)
      throw ParseError("either --family (with --rank/--k/--lambda/--l) or --in is required");
#ifdef _OPENMP
  if (j.threads > 0) omp_set_num_threads(j.threads);
#endif
  const VerifyOptions vopt{true, j.threads};

  if (rho_cmd->parsed()) {
    Family f = parse_family(j.family);
    RhoTable t = rho(f, j.level, Rational::parse(j.nu), parse_dvariant(j.dvariant), parse_convention(j.convention));
    for (auto& [i, ex] : t.e) std::cout << "e" << i << " -> " << pretty(ex) << '\n';
    for (auto& [i, ex] : t.f) std::cout << "f" << i << " -> " << pretty(ex) << '\n';
    for (auto& [i, m] : t.t) std::cout << "t" << i << " -> " << pretty(m) << '\n';
    return 0;
  }

  if (build_cmd->parsed()) {
    GeneratorSet g = generators(j);
    save(g, j.out);
    Report r;
    r.claim = "generators built";
    std::size_t widest = 0;
    for (int i = 0; i < g.rank(); ++i) widest = std::max({widest, g.e[i].max_column_nnz(), g.f[i].max_column_nnz()});
    r.pass = widest <= 6;
    if (!r.pass) r.witness = "a column has " + std::to_string(widest) + " nonzero entries";
    r.data = {{"out", j.out}, {"columns", g.dim()}, {"max_column_nnz", widest}};
    return emit(g, {r}, j.timings);
  }

  GeneratorSet g = generators(j);

  if (verify_cmd->parsed()) {
    auto reports = verify_defining_relations(g, vopt);
    if (j.oracle && (g.spec.family == Family::B || g.spec.family == Family::G) && !g.spec.params &&
        g.spec.convention == Convention::Corrected)
      reports.push_back(oracle_diff(g, closed_form_generators(g.spec)));
    return emit(g, reports, j.timings);
  }
  if (prim_cmd->parsed()) {
    PrimitiveResult P = primitive_space(g);
    Report r;
    r.claim = "primitive space is spanned by v^0";
    r.pass = P.dim() == 1 && P.space.contains(unit_vector(*g.field, 0));
    if (!r.pass) r.witness = "dim P = " + std::to_string(P.dim());
    json basis = json::array();
    for (const auto& v : P.space.basis()) {
      json vec = json::array();
      for (const auto& [c, x] : v) vec.push_back({c, x.to_strings()});
      basis.push_back(vec);
    }
    r.data = {{"dim", P.dim()},
              {"basis", basis},
              {"weight_blocks", P.blocks},
              {"certified_mod_p", P.certified_blocks},
              {"exact_blocks", P.exact_blocks},
              {"prime", P.prime}};
    return emit(g, {r}, j.timings);
  }
  if (clos_cmd->parsed()) {
    Closure L = submodule_closure(g);
    Report r;
    r.claim = "submodule generated by v^0";
    r.pass = true;
    r.data = {{"dim", L.dim()}, {"weights", L.blocks.size()}, {"ambient_dim", g.dim()}};
    return emit(g, {r}, j.timings);
  }
  if (char_cmd->parsed()) {
    Closure L = submodule_closure(g);
    auto ch = character(g, L);
    Report r;
    r.claim = "character of the submodule generated by v^0";
    std::size_t total = 0;
    json table = json::array();
    for (const auto& [w, m] : ch) {
      table.push_back({{"weight", w}, {"multiplicity", m}});
      total += m;
    }
    auto gr = graded_character(g, L.dim());
    json graded = json::array();
    for (const auto& [w, m] : gr.mult) graded.push_back({{"weight", w}, {"multiplicity", m}});
    r.pass = total == L.dim() && gr.direct;
    if (total != L.dim())
      r.witness = "multiplicities sum to " + std::to_string(total);
    else if (!gr.direct)
      r.witness = "integral weight grading is not direct";
    r.data = {{"dim", L.dim()}, {"character", table}, {"graded_character", graded}};
    return emit(g, {r}, j.timings);
  }
  if (cert_cmd->parsed()) {
    Report c = certify_irreducible(g, vopt);
    std::vector<Report> reports{c};
    if (c.pass) reports.push_back(irreducibility_sampling(g, submodule_closure(g), j.samples, j.seed));
    return emit(g, reports, j.timings);
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InvalidOrder& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedConfig& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return 3;
  } catch (const UnsupportedDenominator& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return 3;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
