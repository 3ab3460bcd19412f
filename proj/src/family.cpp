#include "qnil/family.hpp"

#include "qnil/errors.hpp"

namespace qnil {

Family parse_family(const std::string& s) {
  if (s.size() == 1) {
    switch (s[0]) {
      case 'A': case 'a': return Family::A;
      case 'B': case 'b': return Family::B;
      case 'C': case 'c': return Family::C;
      case 'D': case 'd': return Family::D;
      case 'G': case 'g': return Family::G;
    }
  }
  throw ParseError("unknown family '" + s + "' (expected one of A, B, C, D, G)");
}

char family_char(Family f) { return "ABCDG"[static_cast<int>(f)]; }

void validate_rank(Family f, int n, int k) {
  if (n < 1) throw ShapeError("rank must be positive");
  if (f == Family::G && n != 2) throw ShapeError("G only exists in rank 2");
  if (f == Family::D && n < 3) throw ShapeError("D requires rank >= 3");
  if (k < 1 || k > n) throw ShapeError("k must satisfy 1 <= k <= n");
}

Cartan cartan(Family f, int n) {
  Cartan c;
  c.n = n;
  c.a.assign(n, std::vector<int>(n, 0));
  c.d.assign(n, Rational(1));
  for (int i = 0; i < n; ++i) c.a[i][i] = 2;
  auto link = [&](int i, int j) { c.a[i][j] = c.a[j][i] = -1; };
  switch (f) {
    case Family::G:
      c.a[0][1] = -3;
      c.a[1][0] = -1;
      c.d[1] = Rational(3);
      return c;
    case Family::D:
      if (n >= 3) {
        link(0, 2);
        link(1, 2);
      }
      for (int j = 2; j + 1 < n; ++j) link(j, j + 1);
      return c;
    default:
      for (int j = 0; j + 1 < n; ++j) link(j, j + 1);
  }
  // The short/long normalisation of node 1 applies in every rank, including 1.
  if (f == Family::B) {
    if (n >= 2) c.a[0][1] = -2;
    c.d[0] = Rational(1, 2);
  }
  if (f == Family::C) {
    if (n >= 2) c.a[1][0] = -2;
    c.d[0] = Rational(2);
  }
  return c;
}

}  // namespace qnil
