#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qnil/errors.hpp"
#include "qnil/module_builder.hpp"
#include "qnil/serialize.hpp"
#include "support.hpp"

using namespace qnil;
using qnil::testing::same_generators;
using qnil::testing::spec;

namespace {

std::vector<ModuleSpec> small_specs() {
  return {
      spec(Family::A, 1, 1, {2}, 3),       spec(Family::A, 2, 1, {1, 2}, 5),    spec(Family::A, 2, 2, {1}, 3),
      spec(Family::A, 3, 2, {1, 2}, 5), spec(Family::B, 2, 1, {1, 1}, 3),    spec(Family::B, 2, 2, {2}, 3),
      spec(Family::B, 3, 3, {1}, 5),       spec(Family::B, 3, 2, {1, 2}, 3),    spec(Family::C, 2, 1, {2, 1}, 3),
      spec(Family::C, 2, 2, {1}, 3),       spec(Family::C, 3, 3, {2}, 3),       spec(Family::D, 3, 3, {1}, 3),
      spec(Family::D, 3, 2, {1, 2}, 3),    spec(Family::D, 4, 4, {2}, 3),       spec(Family::G, 2, 2, {3}, 5),
      spec(Family::G, 2, 1, {1, 2}, 5),
  };
}

}  // namespace

TEST_CASE("compiled engine matches the reference interpreter") {
  for (const auto& s : small_specs()) {
    CAPTURE(s.label());
    CHECK(same_generators(build(s), build_reference(s)));
  }
}

TEST_CASE("parallel and serial assembly agree") {
  for (const auto& s : small_specs()) {
    CAPTURE(s.label());
    CHECK(same_generators(build(s, {true, 0}), build(s, {false, 1})));
  }
}

TEST_CASE("closed-form torus generators equal their atom-wise expansion") {
  for (auto s : small_specs()) {
    CAPTURE(s.label());
    auto closed = build(s);
    s.ghosts = GhostMode::Raw;
    CHECK(same_generators(closed, build(s)));
  }
}

TEST_CASE("engine equals the closed-form actions for B and G2") {
  for (const auto& s : {spec(Family::B, 2, 1, {0, 0}, 3), spec(Family::B, 2, 1, {2, 1}, 3),
                        spec(Family::B, 2, 2, {1}, 3), spec(Family::B, 3, 3, {2}, 5), spec(Family::B, 3, 2, {1, 1}, 3),
                        spec(Family::G, 2, 1, {0, 0}, 5), spec(Family::G, 2, 1, {1, 2}, 5),
                        spec(Family::G, 2, 2, {4}, 5), spec(Family::G, 2, 2, {2}, 7)}) {
    CAPTURE(s.label());
    CHECK(same_generators(build(s), closed_form_generators(s)));
  }
  CHECK_THROWS_AS(closed_form_generators(spec(Family::A, 2, 1, {0, 0}, 3)), OracleUnavailable);
}

TEST_CASE("printed companion parameters break the closed-form actions for B") {
  // evidence for the corrected offsets: the closed forms encode t v^0 = eps_i^{lambda_i}
  auto s = spec(Family::B, 2, 1, {1, 1}, 3);
  s.convention = Convention::Printed;
  auto printed = build(s);
  s.convention = Convention::Corrected;
  CHECK_FALSE(same_generators(printed, closed_form_generators(s)));
}

TEST_CASE("rank one by hand") {
  // e v(m) = [-m] v(m-1), f v(m) = [m - lambda] v(m+1), t v(m) = eps^{lambda - 2m} v(m)
  for (int l : {3, 5, 7})
    for (long lam = 0; lam < l; ++lam) {
      const Field& F = Field::get(l);
      auto g = build(spec(Family::A, 1, 1, {lam}, l));
      REQUIRE(g.dim() == static_cast<std::uint64_t>(l));
      for (int m = 0; m < l; ++m) {
        CHECK(g.e[0].at(F.mod(m - 1), m) == qint(F, -m, 1));
        CHECK(g.f[0].at(F.mod(m + 1), m) == qint(F, m - lam, 1));
        CHECK(g.t[0].at(m, m) == eps_pow(F, lam - 2 * m));
        CHECK(g.t_exp[0][m] == F.mod(lam - 2 * m));
      }
    }
}

TEST_CASE("matrix shape invariants") {
  for (const auto& s : small_specs()) {
    CAPTURE(s.label());
    auto g = build(s);
    CHECK(g.dim() == shape_for(s.family, s.n, s.k, s.l).dim());
    for (int i = 0; i < g.rank(); ++i) {
      CHECK(g.e[i].max_column_nnz() <= 6);
      CHECK(g.f[i].max_column_nnz() <= 6);
      CHECK(g.t[i].is_diagonal());
      CHECK(compose(g.t[i], g.t_inv[i]) == identity(*g.field, g.dim()));
      for (std::uint64_t c = 0; c < g.dim(); c += 7) CHECK(g.t[i].at(c, c) == g.field->zeta_pow(g.t_exp[i][c]));
    }
  }
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(build(spec(Family::A, 1, 1, {0}, 4)), InvalidOrder);
  CHECK_THROWS_AS(build(spec(Family::G, 2, 1, {0, 0}, 9)), UnsupportedConfig);
  CHECK_THROWS_AS(build(spec(Family::B, 2, 1, {0}, 3)), ShapeError);
  CHECK_THROWS_AS(build(spec(Family::B, 2, 3, {}, 3)), ShapeError);
  // rank 3 needs cube roots of torus elements
  CHECK_THROWS_AS(build(spec(Family::A, 3, 1, {0, 0, 0}, 3)), UnsupportedDenominator);
  CHECK_THROWS_AS(build(spec(Family::A, 4, 4, {0}, 3)), UnsupportedDenominator);
  CHECK_NOTHROW(build(spec(Family::A, 2, 1, {0, 0}, 3)));
  // B needs eps^{1/2}
  CHECK_NOTHROW(build(spec(Family::B, 2, 2, {0}, 3)));
}

TEST_CASE("sparse operator algebra") {
  const Field& F = Field::get(5);
  auto g = build(spec(Family::A, 1, 1, {0}, 5));
  // the bare shift x: v(m) -> v(m-1)
  SparseOp x(F, 5);
  for (std::uint64_t c = 0; c < 5; ++c) x.append_column({{(c + 4) % 5, CycloNum(F, 1)}});
  CHECK(power(x, 5) == identity(F, 5));
  CHECK_FALSE(power(x, 2) == identity(F, 5));
  auto v = unit_vector(F, 3);
  CHECK(qnil::apply(identity(F, 5), v) == v);
  CHECK(qnil::apply(compose(g.e[0], g.f[0]), v) == qnil::apply(g.e[0], qnil::apply(g.f[0], v)));
  CHECK_THROWS_AS(compose(x, identity(F, 4)), DimensionMismatch);
  CHECK_THROWS_AS(qnil::apply(x, unit_vector(F, 9)), DimensionMismatch);
}

TEST_CASE("JSON export round-trips exactly") {
  for (const auto& s : {spec(Family::B, 2, 1, {1, 2}, 3), spec(Family::G, 2, 2, {3}, 5), spec(Family::D, 3, 2, {1, 1}, 3),
                        spec(Family::A, 2, 1, {2, 4}, 5)}) {
    CAPTURE(s.label());
    auto g = build(s);
    auto j = to_json(g);
    CHECK(j.at("l") == s.l);
    CHECK(j.at("shape").size() == static_cast<std::size_t>(g.shape.size()));
    auto back = generators_from_json(nlohmann::json::parse(j.dump()));
    CHECK(same_generators(g, back));
    CHECK(back.t_exp == g.t_exp);
    CHECK(to_json(back).dump() == j.dump());
  }
  auto j = to_json(build(spec(Family::A, 1, 1, {1}, 3)));
  j["generators"]["e1"][0][1] = 99;
  CHECK_THROWS_AS(generators_from_json(j), ParseError);
}
