#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnil/cyclotomic.hpp"
#include "qnil/family.hpp"
#include "qnil/schnizer.hpp"
#include "qnil/sparse.hpp"
#include "qnil/tensor_space.hpp"

namespace qnil {

// How the ghost generators t_{j+1,j} are turned into level-j operators:
// Closed uses the hand-simplified monomials, Raw expands the defining
// fractional product atom by atom (needed once b is perturbed).
enum class GhostMode { Closed, Raw };

struct ModuleSpec {
  Family family = Family::A;
  int n = 1;
  int k = 1;
  std::vector<long> lambda;  // lambda_k, ..., lambda_n (G: lambda_k, ..., lambda_2)
  int l = 3;
  Convention convention = Convention::Corrected;
  DVariant dvariant = DVariant::Swap;
  GhostMode ghosts = GhostMode::Closed;
  std::optional<ParamTable> params;  // default_params when absent

  // Level carrying the generators of the built representation (G: 2).
  int top() const { return family == Family::G ? 2 : n; }
  int rank() const { return level_rank(family, top()); }
  // Highest level that is represented trivially (pi_{k-1}).
  int lowest() const;
  // Throws InvalidOrder / ShapeError / UnsupportedConfig.
  void validate() const;
  // lambda padded to length rank(): zeros below k.
  std::vector<long> full_weight() const;
  ParamTable effective_params() const;
  std::string label() const;
};

struct GeneratorSet {
  ModuleSpec spec;
  FactorShape shape;
  const Field* field = nullptr;
  Cartan cartan;
  std::vector<SparseOp> e, f, t, t_inv;  // index i-1
  // t_i acts on basis vector c by zeta^{t_exp[i-1][c]}.
  std::vector<std::vector<int>> t_exp;

  int rank() const { return static_cast<int>(e.size()); }
  std::uint64_t dim() const { return shape.dim(); }
  // d_i as a residue, i.e. eps_i = zeta^{d_res(i)}.
  int d_res(int i) const { return cartan.sym(i).residue(field->l()); }
};

struct BuildOptions {
  bool parallel = true;
  int threads = 0;  // 0: OpenMP default
};

// Compiles every generator into shift/diagonal/bracket paths and evaluates
// them column by column.
GeneratorSet build(const ModuleSpec& spec, const BuildOptions& opt = {});
// Straightforward interpreter of the symbolic tables (serial, rational
// exponents evaluated afresh for every basis vector).  Slow; for testing.
GeneratorSet build_reference(const ModuleSpec& spec);
// Matrices assembled from the closed-form actions of types B and G2; an
// independent code path used as an oracle.  Throws OracleUnavailable otherwise.
GeneratorSet closed_form_generators(const ModuleSpec& spec);

// Fills t_inv and t_exp from diagonal t matrices; used by loaders.
void finish_torus(GeneratorSet& g);

}  // namespace qnil
