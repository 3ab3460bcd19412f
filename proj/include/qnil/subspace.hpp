#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qnil/sparse.hpp"

namespace qnil {

// Exact subspace of Q(zeta_l)^dim kept in echelon form: every basis vector has
// a distinct leading (smallest) index with coefficient 1 there.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(const Field& f) : f_(&f) {}

  const Field& field() const { return *f_; }
  std::size_t rank() const { return rows_.size(); }
  // v reduced against the basis (zero iff v lies in the span).
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  // Inserts v; returns the normalised new basis vector, or empty if dependent.
  SparseVec insert(const SparseVec& v);
  // Basis vectors ordered by leading index.
  std::vector<SparseVec> basis() const;
  // Union of two subspaces on disjoint supports (no reduction needed) or general.
  void absorb(const Subspace& o);

 private:
  const Field* f_ = nullptr;
  std::map<std::uint64_t, SparseVec> rows_;
};

// Exact kernel of the linear map whose columns are `cols` (each column a vector
// in some target space).  Returned vectors live in Q(zeta)^{cols.size()}.
std::vector<SparseVec> exact_kernel(const Field& f, const std::vector<SparseVec>& cols);

}  // namespace qnil
