#pragma once

#include <string>
#include <vector>

#include "qnil/rational.hpp"

namespace qnil {

enum class Family { A, B, C, D, G };

Family parse_family(const std::string& s);
char family_char(Family f);

// Cartan data in the labelling the module formulas are written in:
// B has a_12 = -2 and d_1 = 1/2, C has a_21 = -2 and d_1 = 2, D forks at node 3
// (a_13 = a_23 = -1, a_12 = 0), G2 has a_12 = -3 and d = (1, 3).
struct Cartan {
  int n = 0;
  std::vector<std::vector<int>> a;  // 0-based a[i][j]
  std::vector<Rational> d;

  int entry(int i, int j) const { return a[i - 1][j - 1]; }  // 1-based
  const Rational& sym(int i) const { return d[i - 1]; }
};

Cartan cartan(Family f, int n);

// Throws ShapeError unless (family, n, k) is a supported combination.
void validate_rank(Family f, int n, int k);

}  // namespace qnil
