#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qnil/errors.hpp"
#include "qnil/tensor_space.hpp"
#include "support.hpp"

using namespace qnil;

TEST_CASE("shape sizes") {
  auto b = shape_for(Family::B, 2, 1, 3);
  CHECK(b.size() == 4);
  CHECK(b.dim() == 81);
  for (int l : {3, 5, 7}) {
    auto a = shape_for(Family::A, 2, 1, l);
    CHECK(a.size() == 3);
    CHECK(a.dim() == static_cast<std::uint64_t>(l * l * l));
  }
  auto g = shape_for(Family::G, 2, 1, 5);
  CHECK(g.size() == 6);
  CHECK(g.dim() == 15625);
  CHECK(shape_for(Family::G, 2, 2, 5).size() == 5);
  // D: V_j has j coordinates, its companion j - 2
  CHECK(shape_for(Family::D, 4, 3, 3).size() == 4 + 2 + 3 + 1);
  CHECK(shape_for(Family::D, 4, 3, 3).dim() == 59049);
  CHECK(shape_for(Family::C, 2, 2, 3).size() == 3);
  CHECK_THROWS_AS(shape_for(Family::B, 2, 3, 3), ShapeError);
}

TEST_CASE("coordinate order: outer level first, V before its companion") {
  auto s = shape_for(Family::B, 3, 2, 3);
  std::vector<std::string> want{"V3[1]", "V3[2]", "V3[3]", "Vt3[1]", "Vt3[2]", "V2[1]", "V2[2]", "Vt2[1]"};
  CHECK(s.labels() == want);
  CHECK(s.position(3, true, 2) == 4);
  CHECK(s.position(2, false, 3) == -1);
  CHECK(s.position(1, false, 1) == -1);
}

TEST_CASE("encode and decode") {
  auto s = shape_for(Family::A, 2, 1, 3);
  CHECK(s.encode({0, 0, 0}) == 0);
  CHECK(s.encode({0, 0, 1}) == 1);
  CHECK(s.encode({1, 0, 0}) == 9);
  auto big = shape_for(Family::C, 3, 1, 5);
  std::mt19937_64 rng(testing::seed(4));
  std::uniform_int_distribution<std::uint64_t> flat(0, big.dim() - 1);
  for (int it = 0; it < 1000; ++it) {
    std::uint64_t x = flat(rng);
    CHECK(big.encode(big.decode(x)) == x);
  }
  for (std::uint64_t x = 0; x < s.dim(); ++x) CHECK(s.encode(s.decode(x)) == x);
}

TEST_CASE("shifts wrap mod l") {
  auto s = shape_for(Family::A, 1, 1, 3);
  CHECK(shift(s, {0}, 0, -1) == BasisIndex{2});
  CHECK(shift(s, {2}, 0, 1) == BasisIndex{0});
  auto t = shape_for(Family::B, 2, 1, 5);
  std::mt19937_64 rng(testing::seed(5));
  std::uniform_int_distribution<int> res(0, 4), pos(0, t.size() - 1), delta(-12, 12);
  for (int it = 0; it < 500; ++it) {
    BasisIndex m(t.size());
    for (auto& x : m) x = res(rng);
    int p = pos(rng), d = delta(rng);
    CHECK(shift(t, shift(t, m, p, d), p, -d) == m);
    CHECK(shift(t, m, p, 5) == m);
    CHECK(t.shifted(t.encode(m), p, d) == t.encode(shift(t, m, p, d)));
    CHECK(t.digit(t.encode(m), p) == m[p]);
  }
}
