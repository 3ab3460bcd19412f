#include "qnil/tensor_space.hpp"

#include <limits>

#include "qnil/errors.hpp"

namespace qnil {

namespace {
// Keeps flat indices comfortably inside memory-addressable ranges.
constexpr std::uint64_t kMaxDim = std::uint64_t(1) << 34;
}  // namespace

int factor_dim(Family f, int level, bool tilde) {
  if (level <= 0) return 0;
  switch (f) {
    case Family::A: return tilde ? 0 : level;
    case Family::B:
    case Family::C: return tilde ? level - 1 : level;
    case Family::D: return tilde ? std::max(level - 2, 0) : level;
    case Family::G:
      if (tilde) return 0;
      return level == 2 ? 5 : 1;
  }
  return 0;
}

std::vector<int> levels_for(Family f, int n, int k) {
  std::vector<int> out;
  if (f == Family::G) {
    out.push_back(2);
    if (k == 1) out.push_back(1);
    return out;
  }
  for (int j = n; j >= k; --j) out.push_back(j);
  return out;
}

FactorShape::FactorShape(Family f, int n, int k, int l) : family_(f), n_(n), k_(k), l_(l) {
  validate_rank(f, n, k);
  if (l < 2) throw ShapeError("l must be at least 2");
  for (auto& t : lookup_) t.assign(n + 1, {});
  for (int level : levels_for(f, n, k)) {
    for (int tilde = 0; tilde < 2; ++tilde) {
      int m = factor_dim(f, level, tilde != 0);
      lookup_[tilde][level].assign(m + 1, -1);
      for (int i = 1; i <= m; ++i) {
        lookup_[tilde][level][i] = static_cast<int>(coords_.size());
        coords_.push_back({level, tilde != 0, i});
      }
    }
  }
  strides_.assign(coords_.size(), 1);
  dim_ = 1;
  for (int p = static_cast<int>(coords_.size()) - 1; p >= 0; --p) {
    strides_[p] = dim_;
    if (dim_ > kMaxDim / static_cast<std::uint64_t>(l))
      throw ShapeError("tensor space too large: l^" + std::to_string(coords_.size()));
    dim_ *= static_cast<std::uint64_t>(l);
  }
}

int FactorShape::position(int level, bool tilde, int index) const {
  if (level < 0 || level > n_ || index < 1) return -1;
  const auto& row = lookup_[tilde ? 1 : 0][level];
  if (index >= static_cast<int>(row.size())) return -1;
  return row[index];
}

std::uint64_t FactorShape::shifted(std::uint64_t flat, int pos, int delta) const {
  int d = digit(flat, pos);
  int nd = static_cast<int>(((d + delta) % l_ + l_) % l_);
  return flat + (static_cast<std::int64_t>(nd) - d) * static_cast<std::int64_t>(strides_[pos]);
}

std::uint64_t FactorShape::encode(const BasisIndex& idx) const {
  if (static_cast<int>(idx.size()) != size())
    throw ShapeError("basis index has " + std::to_string(idx.size()) + " residues, shape has " +
                     std::to_string(size()));
  std::uint64_t flat = 0;
  for (int p = 0; p < size(); ++p) {
    if (idx[p] < 0 || idx[p] >= l_) throw ShapeError("residue out of range [0, l)");
    flat += static_cast<std::uint64_t>(idx[p]) * strides_[p];
  }
  return flat;
}

BasisIndex FactorShape::decode(std::uint64_t flat) const {
  if (flat >= dim_) throw ShapeError("flat index " + std::to_string(flat) + " out of range");
  BasisIndex idx(size());
  for (int p = 0; p < size(); ++p) idx[p] = digit(flat, p);
  return idx;
}

std::vector<std::string> FactorShape::labels() const {
  std::vector<std::string> out;
  for (const auto& c : coords_)
    out.push_back(std::string(c.tilde ? "Vt" : "V") + std::to_string(c.level) + "[" + std::to_string(c.index) + "]");
  return out;
}

FactorShape shape_for(Family f, int n, int k, int l) { return FactorShape(f, n, k, l); }

BasisIndex shift(const FactorShape& s, BasisIndex idx, int pos, int delta) {
  if (pos < 0 || pos >= s.size()) throw ShapeError("coordinate out of range");
  int l = s.l();
  idx[pos] = ((idx[pos] + delta) % l + l) % l;
  return idx;
}

}  // namespace qnil
