#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnil/module_builder.hpp"
#include "qnil/subspace.hpp"

namespace qnil {

struct Report {
  std::string claim;
  bool pass = false;
  std::string witness;  // always set on failure
  double seconds = 0;
  nlohmann::json data = nlohmann::json::object();
};

nlohmann::json to_json(const Report& r);
nlohmann::json to_json(const std::vector<Report>& rs);
bool all_pass(const std::vector<Report>& rs);

struct VerifyOptions {
  bool parallel = true;
  int threads = 0;
};

// Simultaneous t-eigenvalue exponents of basis vector c, packed base l.
std::uint64_t weight_key(const GeneratorSet& g, std::uint64_t c);
// Weight of basis vector c in units of eps_i (so v^0 has weight lambda mod l).
std::vector<int> weight_of(const GeneratorSet& g, std::uint64_t c);

struct PrimitiveResult {
  Subspace space;
  std::size_t blocks = 0;
  std::size_t certified_blocks = 0;  // settled by the mod-p rank bound
  std::size_t exact_blocks = 0;      // needed exact elimination
  std::uint64_t prime = 0;
  std::size_t dim() const { return space.rank(); }
};

// P = intersection of ker e_i, block by block over the weight decomposition.
// `order` permutes the e_i (1-based); `force_exact` skips the mod-p shortcut.
PrimitiveResult primitive_space(const GeneratorSet& g, const std::vector<int>& order = {}, bool force_exact = false);

struct Closure {
  std::map<std::uint64_t, Subspace> blocks;  // by weight_key
  std::size_t dim() const;
  Subspace merged() const;
  std::vector<SparseVec> basis() const;
};

// Smallest subspace containing `start` and stable under all e_i, f_i, t_i^{+-1}.
Closure submodule_closure(const GeneratorSet& g, const SparseVec& start);
inline Closure submodule_closure(const GeneratorSet& g) { return submodule_closure(g, unit_vector(*g.field, 0)); }

std::vector<Report> verify_defining_relations(const GeneratorSet& g, const VerifyOptions& opt = {});
Report verify_highest_weight(const GeneratorSet& g);
Report verify_nilpotency(const GeneratorSet& g, const Closure& L, const VerifyOptions& opt = {});
// weight (eps_i units) -> multiplicity in L
std::map<std::vector<int>, std::size_t> character(const GeneratorSet& g, const Closure& L);
// Integral weights (fundamental-weight coordinates) of the module generated by
// v^0, tracking e_j -> +alpha_j, f_j -> -alpha_j from lambda.  `direct` is true
// when the graded pieces add up to dim L, i.e. the grading is well defined.
struct GradedCharacter {
  std::map<std::vector<long>, std::size_t> mult;
  std::size_t total = 0;
  bool direct = false;
};
GradedCharacter graded_character(const GeneratorSet& g, std::size_t dim_L);
// Closure from `samples` random nonzero vectors of L must give back L.
Report irreducibility_sampling(const GeneratorSet& g, const Closure& L, int samples, std::uint64_t seed);
// dim P = 1, highest weight, nilpotency on the closure.  Requires 0 <= lambda_i < l.
Report certify_irreducible(const GeneratorSet& g, const VerifyOptions& opt = {});

}  // namespace qnil
