#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qnil/family.hpp"
#include "qnil/rational.hpp"
#include "qnil/tensor_space.hpp"

namespace qnil {

// X: shift x_{i,level}^{power}; Z: z_{i,level}^{exp} (diagonal); T: t_{i,level}^{exp};
// E/F: sub-level generators; S: scalar eps^{exp}.
enum class AtomKind { X, Z, T, E, F, S };

struct Atom {
  AtomKind kind = AtomKind::S;
  int level = 0;
  bool tilde = false;
  int index = 0;
  int power = 1;
  Rational exp;
};

Atom X(int level, int i, int power = 1, bool tilde = false);
Atom Z(int level, int i, Rational r = 1, bool tilde = false);
Atom T(int level, int i, Rational r = 1);
Atom E(int level, int i);
Atom F(int level, int i);
Atom S(Rational r);

// [r]_{eps^d}
struct QCoef {
  Rational r, d;
};

// {monomial}_{eps^d} = (z - z^-1) / (eps^d - eps^-d)
struct Brace {
  std::vector<Atom> arg;
  Rational d = 1;
};

// coefs * brace * mono; mono is an operator product applied right to left and
// the brace is evaluated on the state the product lands in.
struct Term {
  std::vector<QCoef> coefs;
  std::optional<Brace> brace;
  std::vector<Atom> mono;
};

using Expr = std::vector<Term>;
using Monomial = std::vector<Atom>;

// The printed text of the module formulas versus the corrections that make the
// resulting modules satisfy their own highest-weight statements.
enum class Convention { Corrected, Printed };

// Which sub-level raising operator appears in rho^D(e_{1,n}) / rho^D(e_{2,n}).
//   Swap:    e_{1,n} -> ... e_{2,n-1},  e_{2,n} -> ... e_{1,n-1}
//   Printed: e_{1,n} -> ... e_{2,n-1},  e_{2,n} -> ... e_{2,n-1}
//   E1:      e_{1,n} -> ... e_{1,n-1},  e_{2,n} -> ... e_{2,n-1}
enum class DVariant { Swap, Printed, E1 };

std::string to_string(Convention c);
std::string to_string(DVariant v);
DVariant parse_dvariant(const std::string& s);

// Rank of the algebra acting at a level (G2 sits on top of A1).
int level_rank(Family f, int level);

struct RhoTable {
  Family family = Family::A;
  int level = 0;
  int rank = 0;
  std::map<int, Expr> e, f;
  std::map<int, Monomial> t;
};

// Generator images of the level-`level` homomorphism.  nu only matters for G2
// (it enters t_2 and f_2 as a scalar).  Atoms outside the level's own factor
// ranges are already normalised away (x -> term dropped, z -> 1, e/f of an
// out-of-range index -> term dropped); ghost t's are kept.
RhoTable rho(Family f, int level, const Rational& nu, DVariant dv = DVariant::Swap,
             Convention conv = Convention::Corrected);

// Parameter table covering every level 1..n (G: levels 1, 2).  a = 1 everywhere.
struct ParamTable {
  std::map<Coord, Rational> a, b;
  const Rational& a_at(const Coord& c) const;
  const Rational& b_at(const Coord& c) const;
};

ParamTable default_params(Family f, int n, Convention conv = Convention::Corrected);
// b-values of one factor, index ascending (convenience for display and tests).
std::vector<Rational> factor_b(const ParamTable& p, Family f, int level, bool tilde);

// nu_k..nu_n keyed by level.  lambda = (lambda_k, ..., lambda_n).
std::map<int, Rational> weight_shifts(Family f, int n, int k, const std::vector<long>& lambda,
                                      Convention conv = Convention::Corrected);

// Exponents s_i with pi_{k-1}(t_{i,k-1}) = eps^{s_i}; empty means the trivial
// representation.  Only D with k = 2 needs a non-trivial value.
std::map<int, Rational> bottom_torus(Family f, int n, int k, Convention conv = Convention::Corrected);

// t_{j+1,j} expanded atom-wise into level-j t's.
Monomial ghost_raw(Family f, int j, const std::map<int, Rational>& nu, Convention conv = Convention::Corrected);
// Closed form of rho_j(t_{j+1,j}) in level-j atoms (plus, for D j=2, a level-1 t).
Monomial ghost_closed(Family f, int j, const std::map<int, Rational>& nu, Convention conv = Convention::Corrected);

std::string pretty(const Atom& a);
std::string pretty(const Monomial& m);
std::string pretty(const Term& t);
std::string pretty(const Expr& e);

}  // namespace qnil
