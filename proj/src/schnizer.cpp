#include "qnil/schnizer.hpp"

#include <sstream>

#include "qnil/errors.hpp"

namespace qnil {

Atom X(int level, int i, int power, bool tilde) {
  Atom a;
  a.kind = AtomKind::X;
  a.level = level;
  a.index = i;
  a.power = power;
  a.tilde = tilde;
  return a;
}

Atom Z(int level, int i, Rational r, bool tilde) {
  Atom a;
  a.kind = AtomKind::Z;
  a.level = level;
  a.index = i;
  a.exp = std::move(r);
  a.tilde = tilde;
  return a;
}

Atom T(int level, int i, Rational r) {
  Atom a;
  a.kind = AtomKind::T;
  a.level = level;
  a.index = i;
  a.exp = std::move(r);
  return a;
}

Atom E(int level, int i) {
  Atom a;
  a.kind = AtomKind::E;
  a.level = level;
  a.index = i;
  return a;
}

Atom F(int level, int i) {
  Atom a;
  a.kind = AtomKind::F;
  a.level = level;
  a.index = i;
  return a;
}

Atom S(Rational r) {
  Atom a;
  a.kind = AtomKind::S;
  a.exp = std::move(r);
  return a;
}

std::string to_string(Convention c) { return c == Convention::Corrected ? "corrected" : "printed"; }

std::string to_string(DVariant v) {
  switch (v) {
    case DVariant::Swap: return "swap";
    case DVariant::Printed: return "printed";
    case DVariant::E1: return "e1";
  }
  return "?";
}

DVariant parse_dvariant(const std::string& s) {
  if (s == "swap") return DVariant::Swap;
  if (s == "printed") return DVariant::Printed;
  if (s == "e1") return DVariant::E1;
  throw ParseError("unknown D variant '" + s + "' (expected swap, printed or e1)");
}

int level_rank(Family f, int level) {
  if (f == Family::G) return level >= 2 ? 2 : level;
  return level;
}

namespace {

Term term(Monomial mono) {
  Term t;
  t.mono = std::move(mono);
  return t;
}

Term braced(Monomial mono, Monomial arg, Rational d = 1) {
  Term t;
  t.mono = std::move(mono);
  t.brace = Brace{std::move(arg), std::move(d)};
  return t;
}

Monomial cat(Monomial a, const Monomial& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Whether an atom refers to a coordinate or generator that exists at this level.
struct LevelRange {
  Family f;
  int s;
  bool coord_ok(const Atom& a) const {
    return a.level == s && a.index >= 1 && a.index <= factor_dim(f, s, a.tilde);
  }
  bool gen_ok(const Atom& a) const {
    return a.level >= 1 && a.index >= 1 && a.index <= level_rank(f, a.level);
  }
};

// Applies the out-of-range rules: x -> 0 (term dropped), z -> 1, e/f -> 0, t_{0,j} -> 1.
std::optional<Monomial> normalise(const Monomial& m, const LevelRange& r) {
  Monomial out;
  for (const auto& a : m) {
    switch (a.kind) {
      case AtomKind::X:
        if (!r.coord_ok(a)) return std::nullopt;
        out.push_back(a);
        break;
      case AtomKind::Z:
        if (r.coord_ok(a)) out.push_back(a);
        break;
      case AtomKind::E:
      case AtomKind::F:
        if (!r.gen_ok(a)) return std::nullopt;
        out.push_back(a);
        break;
      case AtomKind::T:
        if (a.index >= 1) out.push_back(a);
        break;
      case AtomKind::S:
        out.push_back(a);
        break;
    }
  }
  return out;
}

Expr normalise(const Expr& e, const LevelRange& r) {
  Expr out;
  for (const auto& t : e) {
    auto mono = normalise(t.mono, r);
    if (!mono) continue;
    Term n;
    n.coefs = t.coefs;
    n.mono = std::move(*mono);
    if (t.brace) {
      auto arg = normalise(t.brace->arg, r);
      if (!arg) throw InternalConsistency("brace argument contains a non-diagonal atom");
      n.brace = Brace{std::move(*arg), t.brace->d};
    }
    out.push_back(std::move(n));
  }
  return out;
}

void check_diagonal(const Monomial& m) {
  for (const auto& a : m)
    if (a.kind != AtomKind::Z && a.kind != AtomKind::T && a.kind != AtomKind::S)
      throw InternalConsistency("brace argument / t-image must be diagonal, found " + pretty(a));
}

void rho_type_a(RhoTable& tb, int s, int r) {
  for (int i = 1; i <= r; ++i) {
    tb.e[i] = {braced({X(s, i)}, {Z(s, i - 1), Z(s, i, -1)}), term({X(s, i - 1, -1), X(s, i), E(s - 1, i - 1)})};
    tb.t[i] = {Z(s, i - 1), Z(s, i, -2), Z(s, i + 1), T(s - 1, i)};
    tb.f[i] = {braced({X(s, i, -1)}, {Z(s, i), Z(s, i + 1, -1), T(s - 1, i, -1)}), term({F(s - 1, i)})};
  }
}

void rho_type_g(RhoTable& tb, int s, const Rational& nu2) {
  Term e1_4 = braced({X(s, 1, -1), X(s, 3), X(s, 4)}, {Z(s, 2), Z(s, 4, -1)});
  e1_4.coefs.push_back({Rational(2), Rational(1)});
  tb.e[1] = {braced({X(s, 1, -1), X(s, 2, -1), X(s, 3), X(s, 4), X(s, 4)}, {Z(s, 3, 3), Z(s, 4, -2)}),
             braced({X(s, 1, -1), X(s, 2, -1), X(s, 4), X(s, 4), X(s, 5)}, {Z(s, 4), Z(s, 5, -3)}),
             braced({X(s, 1, -1), X(s, 2), X(s, 3)}, {Z(s, 2, 2), Z(s, 3, -3)}),
             e1_4,
             braced({X(s, 2)}, {Z(s, 1, 3), Z(s, 2, -1)}),
             term({X(s, 1, -1), X(s, 2, -1), X(s, 4), X(s, 5), E(s - 1, 1)})};
  tb.e[2] = {braced({X(s, 1)}, {Z(s, 1, -3)}, 3)};
  tb.t[1] = {Z(s, 1, 3), Z(s, 3, 3), Z(s, 5, 3), Z(s, 2, -2), Z(s, 4, -2), T(s - 1, 1)};
  tb.t[2] = {Z(s, 1, -6), Z(s, 3, -6), Z(s, 5, -6), Z(s, 2, 3), Z(s, 4, 3), S(nu2), T(s - 1, 1, Rational(-3, 2))};
  tb.f[1] = {braced({X(s, 2, -1)}, {Z(s, 2), Z(s, 3, -3), Z(s, 5, -3), Z(s, 4, 2), T(s - 1, 1, -1)}),
             braced({X(s, 4, -1)}, {Z(s, 4), Z(s, 5, -3), T(s - 1, 1, -1)}), term({F(s - 1, 1)})};
  Monomial g = {S(-nu2), T(s - 1, 1, Rational(3, 2))};
  tb.f[2] = {braced({X(s, 1, -1)}, cat({Z(s, 1, 3), Z(s, 3, 6), Z(s, 5, 6), Z(s, 2, -3), Z(s, 4, -3)}, g), 3),
             braced({X(s, 3, -1)}, cat({Z(s, 3, 3), Z(s, 5, 6), Z(s, 4, -3)}, g), 3),
             braced({X(s, 5, -1)}, cat({Z(s, 5, 3)}, g), 3)};
}

// Shared i >= lo block of B, C, D; D re-indexes the tilde factor by one.
void rho_bcd_generic(RhoTable& tb, Family f, int s, int r) {
  const int sh = f == Family::D ? 1 : 0;
  auto Zt = [&](int i, Rational p = 1) { return Z(s, i - sh, std::move(p), true); };
  auto Xt = [&](int i, int p = 1) { return X(s, i - sh, p, true); };
  const int lo = f == Family::B ? 2 : f == Family::C ? 3 : 4;
  for (int i = lo; i <= r; ++i) {
    tb.e[i] = {braced({X(s, i)}, {Z(s, i + 1), Z(s, i, -1)}),
               braced({X(s, i + 1, -1), X(s, i), Xt(i)}, {Zt(i - 1), Zt(i, -1)}),
               term({X(s, i + 1, -1), X(s, i), Xt(i), Xt(i - 1, -1), E(s - 1, i)})};
    tb.t[i] = {Z(s, i + 1), Z(s, i, -2), Z(s, i - 1), Zt(i - 2), Zt(i - 1, -2), Zt(i), T(s - 1, i)};
    tb.f[i] = {braced({X(s, i, -1)}, {Z(s, i), Z(s, i - 1, -1), Zt(i - 2, -1), Zt(i - 1, 2), Zt(i, -1), T(s - 1, i, -1)}),
               braced({Xt(i - 1, -1)}, {Zt(i - 1), Zt(i, -1), T(s - 1, i, -1)}), term({F(s - 1, i)})};
  }
}

void rho_type_b(RhoTable& tb, int s, int r) {
  rho_bcd_generic(tb, Family::B, s, r);
  const Rational h(1, 2);
  auto Zt = [&](int i, Rational p = 1) { return Z(s, i, std::move(p), true); };
  auto Xt = [&](int i, int p = 1) { return X(s, i, p, true); };
  tb.e[1] = {braced({X(s, 1)}, {Z(s, 2), Z(s, 1, -h)}, h),
             braced({X(s, 2, -1), X(s, 1), Xt(1)}, {Zt(1, -1), Z(s, 1, h)}, h),
             term({X(s, 2, -1), Xt(1), E(s - 1, 1)})};
  tb.t[1] = {Z(s, 2), Z(s, 1, -1), Zt(1), T(s - 1, 1)};
  tb.f[1] = {braced({X(s, 1, -1)}, {Z(s, 1, h), Zt(1, -1), T(s - 1, 1, -1)}, h), term({F(s - 1, 1)})};
}

void rho_type_c(RhoTable& tb, int s, int r) {
  rho_bcd_generic(tb, Family::C, s, r);
  auto Zt = [&](int i, Rational p = 1) { return Z(s, i, std::move(p), true); };
  auto Xt = [&](int i, int p = 1) { return X(s, i, p, true); };
  if (r >= 2) {
    tb.e[2] = {braced({X(s, 2)}, {Z(s, 3), Z(s, 2, -1)}),
               braced({X(s, 3, -1), X(s, 2), Xt(2)}, {Zt(1), Zt(2, -1)}),
               term({X(s, 3, -1), X(s, 2), Xt(2), Xt(1, -1), E(s - 1, 2)})};
    // The printed image ends in t_{i,n-1}; i = 2 here.
    tb.t[2] = {Z(s, 3), Z(s, 2, -2), Z(s, 1, 2), Zt(1, -2), Zt(2), T(s - 1, 2)};
    tb.f[2] = {braced({X(s, 2, -1)}, {Z(s, 2), Z(s, 1, -2), Zt(1, 2), Zt(2, -1), T(s - 1, 2, -1)}),
               braced({Xt(1, -1)}, {Zt(1), Zt(2, -1), T(s - 1, 2, -1)}), term({F(s - 1, 2)})};
  }
  tb.e[1] = {braced({X(s, 2, -1), X(s, 2, -1), X(s, 1), Xt(1), Xt(1)}, {Z(s, 1, 2), Zt(1, -2)}, 2),
             braced({X(s, 2, -1), X(s, 1), Xt(1)}, {Z(s, 2), Zt(1, -1)}),
             braced({X(s, 1)}, {Z(s, 2, 2), Z(s, 1, -2)}, 2),
             term({X(s, 2, -1), X(s, 2, -1), Xt(1), Xt(1), E(s - 1, 1)})};
  tb.t[1] = {Z(s, 2, 2), Z(s, 1, -4), Zt(1, 2), T(s - 1, 1)};
  tb.f[1] = {braced({X(s, 1, -1)}, {Z(s, 1, 2), Zt(1, -2), T(s - 1, 1, -1)}, 2), term({F(s - 1, 1)})};
}

void rho_type_d(RhoTable& tb, int s, int r, DVariant dv) {
  rho_bcd_generic(tb, Family::D, s, r);
  auto Zt = [&](int i, Rational p = 1) { return Z(s, i, std::move(p), true); };
  auto Xt = [&](int i, int p = 1) { return X(s, i, p, true); };
  if (r >= 3) {
    tb.e[3] = {braced({X(s, 3)}, {Z(s, 4), Z(s, 3, -1)}),
               braced({X(s, 4, -1), X(s, 3), Xt(2)}, {Zt(1), Zt(2, -1)}),
               term({X(s, 4, -1), X(s, 3), Xt(2), Xt(1, -1), E(s - 1, 3)})};
    // The printed image ends in t_{i,n-1}; i = 3 here.
    tb.t[3] = {Z(s, 4), Z(s, 3, -2), Z(s, 2), Z(s, 1), Zt(1, -2), Zt(2), T(s - 1, 3)};
    tb.f[3] = {braced({X(s, 3, -1)}, {Z(s, 3), Z(s, 2, -1), Z(s, 1, -1), Zt(1, 2), Zt(2, -1), T(s - 1, 3, -1)}),
               braced({Xt(1, -1)}, {Zt(1), Zt(2, -1), T(s - 1, 3, -1)}), term({F(s - 1, 3)})};
  }
  const int sub_for_e2 = dv == DVariant::Swap ? 1 : 2;
  const int sub_for_e1 = dv == DVariant::E1 ? 1 : 2;
  if (r >= 2) {
    tb.e[2] = {braced({X(s, 2)}, {Z(s, 3), Z(s, 2, -1)}),
               braced({Xt(1), X(s, 3, -1), X(s, 2)}, {Z(s, 1), Zt(1, -1)}),
               term({X(s, 3, -1), X(s, 2), X(s, 1, -1), Xt(1), E(s - 1, sub_for_e2)})};
    tb.t[2] = {Z(s, 3), Z(s, 2, -2), Zt(1), T(s - 1, 2)};
    tb.f[2] = {braced({X(s, 2, -1)}, {Z(s, 2), Zt(1, -1), T(s - 1, 2, -1)}), term({F(s - 1, 2)})};
  }
  tb.e[1] = {braced({X(s, 1)}, {Z(s, 3), Z(s, 1, -1)}),
             braced({Xt(1), X(s, 3, -1), X(s, 1)}, {Z(s, 2), Zt(1, -1)}),
             term({X(s, 3, -1), X(s, 1), X(s, 2, -1), Xt(1), E(s - 1, sub_for_e1)})};
  tb.t[1] = {Z(s, 3), Z(s, 1, -2), Zt(1), T(s - 1, 1)};
  tb.f[1] = {braced({X(s, 1, -1)}, {Z(s, 1), Zt(1, -1), T(s - 1, 1, -1)}), term({F(s - 1, 1)})};
}

}  // namespace

RhoTable rho(Family f, int level, const Rational& nu, DVariant dv, Convention) {
  if (level < 1) throw ShapeError("rho is defined for levels >= 1");
  RhoTable tb;
  tb.family = f;
  tb.level = level;
  tb.rank = level_rank(f, level);
  const int s = level, r = tb.rank;
  switch (f) {
    case Family::A: rho_type_a(tb, s, r); break;
    case Family::B: rho_type_b(tb, s, r); break;
    case Family::C: rho_type_c(tb, s, r); break;
    case Family::D: rho_type_d(tb, s, r, dv); break;
    case Family::G:
      if (s == 1)
        rho_type_a(tb, s, r);
      else if (s == 2)
        rho_type_g(tb, s, nu);
      else
        throw ShapeError("G2 has levels 1 and 2 only");
      break;
  }
  LevelRange range{f, s};
  for (auto* m : {&tb.e, &tb.f})
    for (auto& [i, ex] : *m) {
      ex = normalise(ex, range);
      for (const auto& t : ex)
        if (t.brace) check_diagonal(t.brace->arg);
    }
  for (auto& [i, mono] : tb.t) {
    mono = *normalise(mono, range);
    check_diagonal(mono);
  }
  return tb;
}

const Rational& ParamTable::a_at(const Coord& c) const {
  auto it = a.find(c);
  if (it == a.end()) throw ShapeError("no a-parameter for coordinate");
  return it->second;
}

const Rational& ParamTable::b_at(const Coord& c) const {
  auto it = b.find(c);
  if (it == b.end()) throw ShapeError("no b-parameter for coordinate");
  return it->second;
}

namespace {

// b for coordinate i of V_s (tilde=false) or of the tilde factor entering at level s.
Rational default_b(Family f, int s, bool tilde, int i, Convention conv) {
  const bool fixed = conv == Convention::Corrected;
  switch (f) {
    case Family::A: return i;
    case Family::G:
      if (s == 1) return i;
      return std::vector<int>{1, 4, 3, 5, 2}.at(i - 1);
    case Family::B:
      // tilde factor is V~_{s-1}; printed b~_{i,s-1} = i+s-2.
      if (tilde) return i + s - (fixed ? 1 : 2);
      return i == 1 ? 2 * s - 1 : s - i + 1;
    case Family::C:
      if (tilde) return i + s - (fixed ? 0 : 2);
      return s - i + 1;
    case Family::D:
      // tilde factor is V~_{s-2}; printed b~_{i,s-2} = i+s-3.
      if (tilde) return i + s - (fixed ? 1 : 3);
      if (i == 1) return s == 1 ? 1 : s - 1;
      return s - i + 1;
  }
  return 0;
}

}  // namespace

ParamTable default_params(Family f, int n, Convention conv) {
  validate_rank(f, n, 1);
  ParamTable p;
  for (int s : levels_for(f, n, 1))
    for (int tilde = 0; tilde < 2; ++tilde)
      for (int i = 1; i <= factor_dim(f, s, tilde != 0); ++i) {
        Coord c{s, tilde != 0, i};
        p.a[c] = Rational(1);
        p.b[c] = default_b(f, s, tilde != 0, i, conv);
      }
  return p;
}

std::vector<Rational> factor_b(const ParamTable& p, Family f, int level, bool tilde) {
  std::vector<Rational> out;
  for (int i = 1; i <= factor_dim(f, level, tilde); ++i) out.push_back(p.b_at({level, tilde, i}));
  return out;
}

std::map<int, Rational> weight_shifts(Family f, int n, int k, const std::vector<long>& lambda, Convention conv) {
  validate_rank(f, n, k);
  const int top = f == Family::G ? 2 : n;
  if (static_cast<int>(lambda.size()) != top - k + 1)
    throw ShapeError("lambda must have " + std::to_string(top - k + 1) + " entries");
  const bool fixed = conv == Convention::Corrected;
  auto L = [&](int i) -> Rational { return i >= k && i <= top ? Rational(lambda[i - k]) : Rational(0); };
  auto sum = [&](int from, int to) {
    Rational s;
    for (int j = from; j <= to; ++j) s += L(j);
    return s;
  };
  std::map<int, Rational> nu;
  if (f == Family::G) {
    if (k == 1) {
      // printed nu_1 = lambda_1 + 2 has the wrong sign (t_1 v0 would be eps^{-lambda_1-4})
      nu[1] = fixed ? -L(1) - 2 : L(1) + 2;
      nu[2] = Rational(3, 2) * L(1) + 3 * L(2) + 9;
    } else {
      nu[2] = 3 * L(2) + 9;
    }
    return nu;
  }
  for (int i = k; i <= n; ++i) {
    switch (f) {
      case Family::A: {
        Rational s;
        for (int j = k; j <= i; ++j) s += Rational(j) * L(j);
        nu[i] = Rational(-i - 1) - s / Rational(i);
        break;
      }
      case Family::B:
        nu[i] = k >= 2 ? Rational(-2 * i + 1) - sum(k, i) : Rational(-2 * i + 1) - L(1) / Rational(2) - sum(2, i);
        break;
      case Family::C:
        nu[i] = Rational(-2 * i) - sum(k, i);
        // t_{1,0} = eps^{-nu_1} has to carry eps_1^{lambda_1} = eps^{2 lambda_1}
        if (fixed && i == 1) nu[i] = Rational(2) * nu[i];
        break;
      case Family::D:
        if (k >= 3) {
          nu[i] = Rational(-2 * i + 2) - sum(k, i);
        } else if (!fixed) {
          nu[i] = k == 2 ? Rational(-2 * i + 3) - L(2) / Rational(2) - sum(3, i)
                         : Rational(-2 * i + 1) - L(1) / Rational(2) - L(2) / Rational(2) - sum(3, i);
        } else if (i == 1) {
          nu[i] = Rational(-4) - L(1);
        } else if (i == 2) {
          nu[i] = Rational(-2) - L(2);
        } else {
          nu[i] = Rational(-2 * i + 2) - (L(1) + L(2)) / Rational(2) - sum(3, i);
        }
        break;
      case Family::G: break;
    }
  }
  return nu;
}

std::map<int, Rational> bottom_torus(Family f, int, int k, Convention conv) {
  std::map<int, Rational> out;
  if (f == Family::D && k == 2 && conv == Convention::Corrected) out[1] = Rational(2);
  return out;
}

Monomial ghost_raw(Family f, int j, const std::map<int, Rational>& nu, Convention conv) {
  const int nn = j + 1;
  auto it = nu.find(nn);
  if (it == nu.end()) throw PreconditionError("ghost t_{" + std::to_string(nn) + "," + std::to_string(j) + "} needs nu_" + std::to_string(nn));
  Monomial m{S(-it->second)};
  switch (f) {
    case Family::A:
    case Family::G:
      for (int i = 1; i < nn; ++i) m.push_back(T(j, i, Rational(-i, nn)));
      break;
    case Family::B:
      for (int i = 1; i < nn; ++i) m.push_back(T(j, i, -1));
      break;
    case Family::C:
      if (nn >= 2) m.push_back(T(j, 1, Rational(-1, 2)));
      for (int i = 2; i < nn; ++i) m.push_back(T(j, i, -1));
      break;
    case Family::D:
      if (nn >= 3) {
        m.push_back(T(j, 1, Rational(-1, 2)));
        m.push_back(T(j, 2, Rational(-1, 2)));
        for (int i = 3; i < nn; ++i) m.push_back(T(j, i, -1));
      } else if (nn == 2 && conv == Convention::Printed) {
        // printed t_{2,1} = eps^{-lambda_2} t_{1,1}^{-1/2}; the extra factor breaks t_2 f_1 = f_1 t_2
        m.push_back(T(j, 1, Rational(-1, 2)));
      }
      break;
  }
  return m;
}

Monomial ghost_closed(Family f, int j, const std::map<int, Rational>& nu, Convention conv) {
  if (j < 1) return ghost_raw(f, j, nu, conv);
  auto get = [&](int i) {
    auto it = nu.find(i);
    if (it == nu.end()) throw PreconditionError("closed-form ghost needs nu_" + std::to_string(i));
    return it->second;
  };
  const Rational a = get(j + 1), b = get(j);
  switch (f) {
    case Family::A:
    case Family::G:
      return {S(-a + Rational(j, j + 1) * b), Z(j, j)};
    case Family::B:
      return {S(-a + b), Z(j, j), Z(j, j - 1, 1, true)};
    case Family::C:
      if (j == 1) return {S(-a + b / Rational(2)), Z(1, 1, 2)};
      return {S(-a + b), Z(j, j), Z(j, j - 1, 1, true)};
    case Family::D:
      if (conv == Convention::Printed) break;
      if (j == 1) return {S(-a)};
      if (j == 2) return {S(-a + b / Rational(2)), Z(2, 1), Z(2, 2), T(1, 1, Rational(-1, 2))};
      return {S(-a + b), Z(j, j), Z(j, j - 2, 1, true)};
  }
  return ghost_raw(f, j, nu, conv);
}

std::string pretty(const Atom& a) {
  std::ostringstream os;
  auto exp = [&](const Rational& r) {
    if (r.is_one()) return std::string();
    std::string s = r.str();
    if (s.size() > 2 && s.compare(s.size() - 2, 2, "/1") == 0) s.resize(s.size() - 2);
    return "^" + s;
  };
  auto sub = [&](int i, int lv) { return "_{" + std::to_string(i) + "," + std::to_string(lv) + "}"; };
  switch (a.kind) {
    case AtomKind::X: os << (a.tilde ? "x~" : "x") << sub(a.index, a.level) << (a.power == 1 ? "" : "^-1"); break;
    case AtomKind::Z: os << (a.tilde ? "z~" : "z") << sub(a.index, a.level) << exp(a.exp); break;
    case AtomKind::T: os << "t" << sub(a.index, a.level) << exp(a.exp); break;
    case AtomKind::E: os << "e" << sub(a.index, a.level); break;
    case AtomKind::F: os << "f" << sub(a.index, a.level); break;
    case AtomKind::S: {
      std::string s = a.exp.str();
      if (s.size() > 2 && s.compare(s.size() - 2, 2, "/1") == 0) s.resize(s.size() - 2);
      os << "eps^{" << s << "}";
      break;
    }
  }
  return os.str();
}

std::string pretty(const Monomial& m) {
  std::string out;
  for (const auto& a : m) {
    if (!out.empty()) out += " ";
    out += pretty(a);
  }
  return out.empty() ? "1" : out;
}

std::string pretty(const Term& t) {
  std::string out;
  for (const auto& c : t.coefs) {
    std::string r = c.r.str();
    if (r.size() > 2 && r.compare(r.size() - 2, 2, "/1") == 0) r.resize(r.size() - 2);
    out += "[" + r + "]";
    if (!c.d.is_one()) out += "_{eps^" + c.d.str() + "}";
    out += " ";
  }
  if (t.brace) {
    out += "{" + pretty(t.brace->arg) + "}";
    if (!t.brace->d.is_one()) {
      std::string d = t.brace->d.str();
      if (d.size() > 2 && d.compare(d.size() - 2, 2, "/1") == 0) d.resize(d.size() - 2);
      out += "_{eps^" + d + "}";
    }
    out += " ";
  }
  out += pretty(t.mono);
  return out;
}

std::string pretty(const Expr& e) {
  if (e.empty()) return "0";
  std::string out;
  for (const auto& t : e) {
    if (!out.empty()) out += " + ";
    out += pretty(t);
  }
  return out;
}

}  // namespace qnil
