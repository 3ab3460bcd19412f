#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnil/family.hpp"

namespace qnil {

// One tensor coordinate m_{index,level} (or m~_{index,level} when tilde).
struct Coord {
  int level = 0;
  bool tilde = false;
  int index = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

using BasisIndex = std::vector<int>;

// Coordinate layout of V_{k,n}: levels n down to k, within a level the V
// factor before the tilde factor, indices ascending.  Flat encoding is mixed
// radix with the first coordinate most significant.
class FactorShape {
 public:
  FactorShape() = default;
  FactorShape(Family f, int n, int k, int l);

  Family family() const { return family_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int l() const { return l_; }
  int size() const { return static_cast<int>(coords_.size()); }
  const std::vector<Coord>& coords() const { return coords_; }
  const Coord& coord(int pos) const { return coords_[pos]; }
  std::uint64_t dim() const { return dim_; }
  std::uint64_t stride(int pos) const { return strides_[pos]; }

  // Position of a coordinate or -1 when it is out of range for this space.
  int position(int level, bool tilde, int index) const;
  int position(const Coord& c) const { return position(c.level, c.tilde, c.index); }

  // Residue of coordinate pos in the flat index.
  int digit(std::uint64_t flat, int pos) const { return static_cast<int>((flat / strides_[pos]) % l_); }
  // Flat index after m_pos -> m_pos + delta (mod l).
  std::uint64_t shifted(std::uint64_t flat, int pos, int delta) const;

  std::uint64_t encode(const BasisIndex& idx) const;
  BasisIndex decode(std::uint64_t flat) const;

  std::vector<std::string> labels() const;

 private:
  Family family_ = Family::A;
  int n_ = 0, k_ = 0, l_ = 0;
  std::vector<Coord> coords_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t dim_ = 1;
  std::vector<std::vector<int>> lookup_[2];  // [tilde][level][index]
};

// Number of coordinates of V_level (tilde=false) or of its tilde companion.
int factor_dim(Family f, int level, bool tilde);
// Levels present in V_{k,n}, outermost first.
std::vector<int> levels_for(Family f, int n, int k);

FactorShape shape_for(Family f, int n, int k, int l);
BasisIndex shift(const FactorShape& s, BasisIndex idx, int pos, int delta);

}  // namespace qnil
