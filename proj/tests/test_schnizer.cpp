#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qnil/errors.hpp"
#include "qnil/schnizer.hpp"

using namespace qnil;

namespace {

std::vector<Rational> R(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

bool same_atom(const Atom& a, const Atom& b) {
  return a.kind == b.kind && a.level == b.level && a.tilde == b.tilde && a.index == b.index && a.power == b.power &&
         a.exp == b.exp;
}

bool same_monomial(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_atom(a[i], b[i])) return false;
  return true;
}

bool diagonal(const std::vector<Atom>& m) {
  for (const auto& a : m)
    if (a.kind != AtomKind::Z && a.kind != AtomKind::T && a.kind != AtomKind::S) return false;
  return true;
}

}  // namespace

TEST_CASE("printed parameter tables") {
  const auto P = Convention::Printed;
  auto b3 = default_params(Family::B, 3, P);
  CHECK(factor_b(b3, Family::B, 3, false) == R({5, 2, 1}));
  CHECK(factor_b(b3, Family::B, 3, true) == R({2, 3}));
  CHECK(factor_b(default_params(Family::A, 4, P), Family::A, 4, false) == R({1, 2, 3, 4}));
  CHECK(factor_b(default_params(Family::G, 2, P), Family::G, 2, false) == R({1, 4, 3, 5, 2}));
  CHECK(factor_b(default_params(Family::G, 2, P), Family::G, 1, false) == R({1}));
  auto c3 = default_params(Family::C, 3, P);
  CHECK(factor_b(c3, Family::C, 3, false) == R({3, 2, 1}));
  CHECK(factor_b(c3, Family::C, 3, true) == R({2, 3}));
  auto d4 = default_params(Family::D, 4, P);
  CHECK(factor_b(d4, Family::D, 4, false) == R({3, 3, 2, 1}));
  CHECK(factor_b(d4, Family::D, 4, true) == R({2, 3}));
  CHECK(factor_b(d4, Family::D, 1, false) == R({1}));
  for (const auto& [c, a] : d4.a) CHECK(a == Rational(1));
}

TEST_CASE("corrected companion parameters") {
  // Only the companion-factor offsets move; they are pinned by the
  // highest-weight and closed-form checks in test_analysis / test_module_builder.
  auto b3 = default_params(Family::B, 3);
  CHECK(factor_b(b3, Family::B, 3, false) == R({5, 2, 1}));
  CHECK(factor_b(b3, Family::B, 3, true) == R({3, 4}));
  CHECK(factor_b(default_params(Family::C, 3), Family::C, 3, true) == R({4, 5}));
  CHECK(factor_b(default_params(Family::D, 4), Family::D, 4, true) == R({4, 5}));
  CHECK(factor_b(default_params(Family::A, 4), Family::A, 4, false) == R({1, 2, 3, 4}));
}

TEST_CASE("printed weight shifts") {
  const auto P = Convention::Printed;
  auto g = weight_shifts(Family::G, 2, 1, {0, 0}, P);
  CHECK(g.at(1) == Rational(2));
  CHECK(g.at(2) == Rational(9));
  CHECK(weight_shifts(Family::G, 2, 1, {2, 1}, P).at(2) == Rational(15));
  CHECK(weight_shifts(Family::G, 2, 2, {1}, P).at(2) == Rational(12));
  CHECK(weight_shifts(Family::A, 1, 1, {2}, P).at(1) == Rational(-4));
  for (long l1 : {0, 1, 2, 5}) CHECK(weight_shifts(Family::B, 2, 1, {l1, 0}, P).at(1) == Rational(-1) - Rational(l1, 2));
  // -2i + 1 - sum_{j=k}^{i} lambda_j for k >= 2
  CHECK(weight_shifts(Family::B, 3, 2, {1, 2}, P).at(3) == Rational(-8));
  // A: -i - 1 - (1/i) sum j lambda_j
  CHECK(weight_shifts(Family::A, 2, 1, {1, 1}, P).at(2) == Rational(-3) - Rational(3, 2));
  CHECK(weight_shifts(Family::C, 2, 1, {1, 1}, P).at(2) == Rational(-6));
  CHECK(weight_shifts(Family::D, 4, 3, {1, 1}, P).at(4) == Rational(-8));
  CHECK(weight_shifts(Family::D, 3, 2, {2, 1}, P).at(3) == Rational(-5));
  CHECK_THROWS_AS(weight_shifts(Family::B, 2, 1, {1}, P), ShapeError);
}

TEST_CASE("corrected weight shifts") {
  CHECK(weight_shifts(Family::G, 2, 1, {1, 0}).at(1) == Rational(-3));
  CHECK(weight_shifts(Family::C, 2, 1, {1, 0}).at(1) == Rational(-6));
  auto d = weight_shifts(Family::D, 3, 2, {2, 1});
  CHECK(d.at(2) == Rational(-4));
  CHECK(d.at(3) == Rational(-4) - Rational(1) - Rational(1));
  CHECK(bottom_torus(Family::D, 3, 2).at(1) == Rational(2));
  CHECK(bottom_torus(Family::D, 3, 3).empty());
  CHECK(bottom_torus(Family::D, 3, 2, Convention::Printed).empty());
  // everything else as printed
  CHECK(weight_shifts(Family::B, 3, 1, {1, 2, 0}) == weight_shifts(Family::B, 3, 1, {1, 2, 0}, Convention::Printed));
  CHECK(weight_shifts(Family::A, 3, 2, {1, 2}) == weight_shifts(Family::A, 3, 2, {1, 2}, Convention::Printed));
}

TEST_CASE("generator image shapes") {
  for (int n = 2; n <= 4; ++n) {
    auto a = rho(Family::A, n, Rational(0));
    // the second term carries x_{i-1}, which is out of range for i = 1
    for (int i = 2; i <= n; ++i) CHECK(a.e.at(i).size() == 2);
    CHECK(a.e.at(1).size() == 1);
  }
  CHECK(rho(Family::B, 3, Rational(0)).e.at(1).size() == 3);
  auto g = rho(Family::G, 2, Rational(9));
  REQUIRE(g.f.at(2).size() == 3);
  for (const auto& term : g.f.at(2)) {
    REQUIRE(term.brace.has_value());
    CHECK(term.brace->d == Rational(3));
  }
  // n = 1: z_0 = 1 and x_0 = 0 leave a single term
  auto a1 = rho(Family::A, 1, Rational(0));
  REQUIRE(a1.e.at(1).size() == 1);
  CHECK(pretty(a1.e.at(1)) == "{z_{1,1}^-1} x_{1,1}");
}

TEST_CASE("brace arguments and torus images are diagonal") {
  for (auto dv : {DVariant::Swap, DVariant::Printed, DVariant::E1})
    for (auto [f, top] : std::vector<std::pair<Family, int>>{
             {Family::A, 4}, {Family::B, 4}, {Family::C, 4}, {Family::D, 5}, {Family::G, 2}})
      for (int lv = 1; lv <= top; ++lv) {
        auto t = rho(f, lv, Rational(3, 7), dv);
        CHECK(t.rank == level_rank(f, lv));
        for (const auto* side : {&t.e, &t.f})
          for (const auto& [i, ex] : *side)
            for (const auto& term : ex)
              if (term.brace) CHECK(diagonal(term.brace->arg));
        for (const auto& [i, m] : t.t) CHECK(diagonal(m));
      }
}

TEST_CASE("closed forms of the fractional torus generators") {
  std::map<int, Rational> nu{{1, Rational(-5, 3)}, {2, Rational(7, 2)}, {3, Rational(-4)}, {4, Rational(11, 5)}};
  // C, n = 2: eps^{-nu_2 + nu_1/2} z_{1,1}^2
  CHECK(same_monomial(ghost_closed(Family::C, 1, nu), {S(-nu[2] + nu[1] / Rational(2)), Z(1, 1, 2)}));
  // B, n >= 2: eps^{-nu_n + nu_{n-1}} z_{n-1,n-1} z~_{n-2,n-2}
  for (int n = 2; n <= 4; ++n)
    CHECK(same_monomial(ghost_closed(Family::B, n - 1, nu),
                        {S(-nu[n] + nu[n - 1]), Z(n - 1, n - 1), Z(n - 1, n - 2, 1, true)}));
  CHECK_THROWS_AS(ghost_closed(Family::B, 4, nu), PreconditionError);
}

TEST_CASE("d-variant names") {
  for (auto v : {DVariant::Swap, DVariant::Printed, DVariant::E1}) CHECK(parse_dvariant(to_string(v)) == v);
  CHECK_THROWS(parse_dvariant("nonsense"));
  CHECK(level_rank(Family::G, 2) == 2);
  CHECK(level_rank(Family::G, 1) == 1);
  CHECK(level_rank(Family::D, 4) == 4);
}
