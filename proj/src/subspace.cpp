#include "qnil/subspace.hpp"

#include <set>

namespace qnil {

SparseVec Subspace::reduce(SparseVec v) const {
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = rows_.find(v[pos].first);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    // Entries before pos are untouched: the pivot row starts at v[pos].first.
    CycloNum c = -v[pos].second;
    v = axpy(v, c, it->second);
  }
  return v;
}

SparseVec Subspace::insert(const SparseVec& v) {
  if (f_ == nullptr && !v.empty()) f_ = v.front().second.field();
  SparseVec r = reduce(v);
  if (r.empty()) return r;
  CycloNum inv = r.front().second.inverse();
  for (auto& [i, x] : r) x *= inv;
  rows_.emplace(r.front().first, r);
  return r;
}

std::vector<SparseVec> Subspace::basis() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (const auto& [lead, row] : rows_) out.push_back(row);
  return out;
}

void Subspace::absorb(const Subspace& o) {
  for (const auto& [lead, row] : o.rows_) insert(row);
}

std::vector<SparseVec> exact_kernel(const Field& f, const std::vector<SparseVec>& cols) {
  // Rows of the matrix, indexed by column position.
  std::map<std::uint64_t, SparseVec> rows;
  for (std::uint64_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, x] : cols[j]) rows[r].emplace_back(j, x);
  Subspace ech(f);
  for (auto& [r, row] : rows) ech.insert(row);
  std::vector<SparseVec> piv = ech.basis();
  // Back-substitution to reduced form, last pivot first.
  std::map<std::uint64_t, SparseVec> red;
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    SparseVec v = *it;
    std::size_t pos = 1;
    while (pos < v.size()) {
      auto p = red.find(v[pos].first);
      if (p == red.end()) {
        ++pos;
        continue;
      }
      v = axpy(v, -v[pos].second, p->second);
    }
    red.emplace(v.front().first, std::move(v));
  }
  std::vector<SparseVec> out;
  for (std::uint64_t fcol = 0; fcol < cols.size(); ++fcol) {
    if (red.count(fcol)) continue;
    SparseVec k{{fcol, CycloNum(f, Rational(1))}};
    for (const auto& [lead, row] : red)
      for (const auto& [j, x] : row)
        if (j == fcol) k.emplace_back(lead, -x);
    canonicalize(k);
    out.push_back(std::move(k));
  }
  return out;
}

}  // namespace qnil
