// Closed-form actions of types B and G2, written directly in terms of the
// basis labels.  Nothing here goes through the symbolic tables.

#include <array>
#include <functional>
#include <map>
#include <optional>

#include "qnil/errors.hpp"
#include "qnil/module_builder.hpp"

namespace qnil {

namespace {

using Col = std::map<std::uint64_t, CycloNum>;

struct Ctx {
  const FactorShape& shape;
  const Field& F;
  std::uint64_t flat;
  BasisIndex m;

  int get(int level, bool tilde, int i) const {
    int p = shape.position(level, tilde, i);
    return p < 0 ? 0 : m[p];
  }
  // Applies (level, tilde, index, delta) moves; nullopt if any coordinate is absent.
  std::optional<std::uint64_t> shift(std::initializer_list<std::tuple<int, bool, int, int>> moves,
                                     std::uint64_t from) const {
    std::uint64_t r = from;
    for (auto [lv, t, i, d] : moves) {
      int p = shape.position(lv, t, i);
      if (p < 0) return std::nullopt;
      r = shape.shifted(r, p, d);
    }
    return r;
  }
  std::optional<std::uint64_t> shift(std::initializer_list<std::tuple<int, bool, int, int>> moves) const {
    return shift(moves, flat);
  }
  // [x]_{eps^d}
  CycloNum br(const Rational& x, const Rational& d) const { return qint(F, x, d); }
};

void add(Col& out, std::optional<std::uint64_t> r, const CycloNum& c) {
  if (r) out[*r] += c;
}

// ----- type B ---------------------------------------------------------------

struct BOracle {
  const ModuleSpec& spec;
  const FactorShape& shape;
  const Field& F;
  Rational d(int i) const { return i == 1 ? Rational(1, 2) : Rational(1); }
  long L(int i) const { return i >= spec.k && i <= spec.n ? spec.lambda[i - spec.k] : 0; }
  long xi(int i) const { return i >= spec.k ? L(i) : 0; }

  Ctx at(std::uint64_t flat) const { return Ctx{shape, F, flat, shape.decode(flat)}; }

  Col e_level(int j, int i, std::uint64_t flat) const {
    Col out;
    if (j < spec.k || i > j) return out;
    Ctx c = at(flat);
    auto g = [&](bool t, int ii) { return c.get(j, t, ii); };
    if (i == 1 && j == 1) {
      add(out, c.shift({{j, false, 1, -1}}), c.br(2 * g(false, 2) - g(false, 1), d(1)));
      return out;
    }
    if (i == j && j > 1) {
      add(out, c.shift({{j, false, j, -1}}), c.br(-g(false, j), 1));
      return out;
    }
    if (i > 1) {
      add(out, c.shift({{j, false, i, -1}}), c.br(g(false, i + 1) - g(false, i), 1));
      add(out, c.shift({{j, false, i + 1, 1}, {j, false, i, -1}, {j, true, i, -1}}),
          c.br(g(true, i - 1) - g(true, i), 1));
      if (auto mm = c.shift({{j, false, i + 1, 1}, {j, false, i, -1}, {j, true, i, -1}, {j, true, i - 1, 1}}))
        for (auto& [r, v] : e_level(j - 1, i, *mm)) out[r] += v;
      return out;
    }
    add(out, c.shift({{j, false, 1, -1}}), c.br(2 * g(false, 2) - g(false, 1), d(1)));
    add(out, c.shift({{j, false, 2, 1}, {j, false, 1, -1}, {j, true, 1, -1}}), c.br(g(false, 1) - 2 * g(true, 1), d(1)));
    if (auto mm = c.shift({{j, false, 2, 1}, {j, true, 1, -1}}))
      for (auto& [r, v] : e_level(j - 1, 1, *mm)) out[r] += v;
    return out;
  }

  // Weight of the level-j factor in direction i.
  long nu(const Ctx& c, int i, int j) const {
    auto g = [&](bool t, int ii) { return static_cast<long>(c.get(j, t, ii)); };
    if (i == 1) return g(false, 2) - g(false, 1) + g(true, 1);
    return g(false, i + 1) - 2 * g(false, i) + g(false, i - 1) + g(true, i - 2) - 2 * g(true, i - 1) + g(true, i);
  }

  long mu(const Ctx& c, int i, int j) const {
    long s = i > spec.k ? c.get(i - 1, false, i - 1) + c.get(i - 1, true, i - 2) : 0;
    for (int r = std::max(spec.k, i); r <= j; ++r) s += nu(c, i, r);
    return s;
  }

  Col f_col(int i, std::uint64_t flat) const {
    Col out;
    Ctx c = at(flat);
    for (int j = std::max(spec.k, i); j <= spec.n; ++j) {
      if (i == 1) {
        add(out, c.shift({{j, false, 1, 1}}),
            c.br(Rational(2 * c.get(j, false, 2) - c.get(j, false, 1) - 2 * mu(c, 1, j) - xi(1)), d(1)));
      } else {
        add(out, c.shift({{j, false, i, 1}}),
            c.br(Rational(c.get(j, false, i + 1) - c.get(j, false, i) - mu(c, i, j) - xi(i)), 1));
        add(out, c.shift({{j, true, i - 1, 1}}),
            c.br(Rational(c.get(j, true, i - 1) - c.get(j, true, i) - mu(c, i, j - 1) - xi(i)), 1));
      }
    }
    return out;
  }

  CycloNum t_val(int i, std::uint64_t flat) const {
    Ctx c = at(flat);
    return eps_pow(F, Rational(mu(c, i, spec.n)) + d(i) * Rational(xi(i)));
  }
};

// ----- type G2 --------------------------------------------------------------

struct GOracle {
  const ModuleSpec& spec;
  const FactorShape& shape;
  const Field& F;
  long L1() const { return spec.k == 1 ? spec.lambda[0] : 0; }
  long L2() const { return spec.lambda.back(); }

  Ctx at(std::uint64_t flat) const { return Ctx{shape, F, flat, shape.decode(flat)}; }

  // Moves of the five level-2 coordinates plus the level-1 one.
  static std::optional<std::uint64_t> sh(const Ctx& c, std::array<int, 5> dl, int d11 = 0) {
    std::uint64_t r = c.flat;
    for (int i = 0; i < 5; ++i)
      if (dl[i]) r = *c.shift({{2, false, i + 1, dl[i]}}, r);
    if (d11) return c.shift({{1, false, 1, d11}}, r);
    return r;
  }

  Col e1(std::uint64_t flat) const {
    Ctx c = at(flat);
    auto g = [&](int i) { return Rational(c.get(2, false, i)); };
    Rational a(c.get(1, false, 1));
    Col out;
    add(out, sh(c, {1, 1, -1, -2, 0}), c.br(3 * g(3) - 2 * g(4), 1));
    add(out, sh(c, {1, 1, 0, -2, -1}), c.br(g(4) - 3 * g(5), 1));
    add(out, sh(c, {1, -1, -1, 0, 0}), c.br(2 * g(2) - 3 * g(3), 1));
    add(out, sh(c, {1, 0, -1, -1, 0}), c.br(2, 1) * c.br(g(2) - g(4), 1));
    add(out, sh(c, {0, -1, 0, 0, 0}), c.br(3 * g(1) - g(2), 1));
    add(out, sh(c, {1, 1, 0, -1, -1}, -1), c.br(-a, 1));
    return out;
  }

  Col e2(std::uint64_t flat) const {
    Ctx c = at(flat);
    Col out;
    add(out, sh(c, {-1, 0, 0, 0, 0}), c.br(-Rational(c.get(2, false, 1)), 3));
    return out;
  }

  // y-operators: raise one coordinate with a bracket coefficient.
  void y(Col& out, const Ctx& c, int which) const {
    auto g = [&](int i) { return Rational(c.get(2, false, i)); };
    Rational a(c.get(1, false, 1));
    if (which == 11) {
      add(out, sh(c, {0, 0, 0, 0, 0}, 1), c.br(a - L1(), 1));
      return;
    }
    Rational x, d;
    switch (which) {
      case 1: x = g(1) + 2 * g(3) + 2 * g(5) - g(2) - g(4) - a - L2(); d = 3; break;
      case 2: x = g(2) - 3 * g(3) - 3 * g(5) + 2 * g(4) + 2 * a - L1(); d = 1; break;
      case 3: x = g(3) + 2 * g(5) - g(4) - a - L2(); d = 3; break;
      case 4: x = g(4) - 3 * g(5) + 2 * a - L1(); d = 1; break;
      case 5: x = g(5) - a - L2(); d = 3; break;
    }
    std::array<int, 5> dl{0, 0, 0, 0, 0};
    dl[which - 1] = 1;
    add(out, sh(c, dl), c.br(x, d));
  }

  Col f(int i, std::uint64_t flat) const {
    Ctx c = at(flat);
    Col out;
    for (int w : i == 1 ? std::array<int, 3>{2, 4, 11} : std::array<int, 3>{1, 3, 5}) y(out, c, w);
    return out;
  }

  CycloNum t_val(int i, std::uint64_t flat) const {
    Ctx c = at(flat);
    auto g = [&](int j) { return Rational(c.get(2, false, j)); };
    Rational a(c.get(1, false, 1));
    if (i == 1) return eps_pow(F, 3 * g(1) + 3 * g(3) + 3 * g(5) - 2 * g(2) - 2 * g(4) - 2 * a + L1());
    return eps_pow(F, 3 * (-2 * g(1) - 2 * g(3) - 2 * g(5) + g(2) + g(4) + a + L2()));
  }
};

SparseOp from_map_columns(const Field& F, std::uint64_t dim, const std::function<Col(std::uint64_t)>& fn) {
  SparseOp op(F, dim);
  for (std::uint64_t c = 0; c < dim; ++c) {
    SparseVec col;
    for (auto& [r, v] : fn(c))
      if (!v.is_zero()) col.emplace_back(r, v);
    op.append_column(col);
  }
  return op;
}

}  // namespace

GeneratorSet closed_form_generators(const ModuleSpec& spec) {
  if (spec.family != Family::B && spec.family != Family::G)
    throw OracleUnavailable(std::string("no closed-form oracle for type ") + family_char(spec.family));
  spec.validate();
  GeneratorSet g;
  g.spec = spec;
  g.shape = shape_for(spec.family, spec.n, spec.k, spec.l);
  g.field = &Field::get(spec.l);
  g.cartan = cartan(spec.family, spec.n);
  const Field& F = *g.field;
  const std::uint64_t dim = g.shape.dim();
  auto diag = [&](const std::function<CycloNum(std::uint64_t)>& fn) {
    SparseOp op(F, dim);
    for (std::uint64_t c = 0; c < dim; ++c) op.append_column({{c, fn(c)}});
    return op;
  };
  if (spec.family == Family::B) {
    BOracle o{spec, g.shape, F};
    for (int i = 1; i <= spec.n; ++i) {
      g.e.push_back(from_map_columns(F, dim, [&](std::uint64_t c) { return o.e_level(spec.n, i, c); }));
      g.f.push_back(from_map_columns(F, dim, [&](std::uint64_t c) { return o.f_col(i, c); }));
      g.t.push_back(diag([&](std::uint64_t c) { return o.t_val(i, c); }));
    }
  } else {
    GOracle o{spec, g.shape, F};
    g.e.push_back(from_map_columns(F, dim, [&](std::uint64_t c) { return o.e1(c); }));
    g.f.push_back(from_map_columns(F, dim, [&](std::uint64_t c) { return o.f(1, c); }));
    g.e.push_back(from_map_columns(F, dim, [&](std::uint64_t c) { return o.e2(c); }));
    g.f.push_back(from_map_columns(F, dim, [&](std::uint64_t c) { return o.f(2, c); }));
    for (int i = 1; i <= 2; ++i) g.t.push_back(diag([&](std::uint64_t c) { return o.t_val(i, c); }));
  }
  finish_torus(g);
  return g;
}

}  // namespace qnil
