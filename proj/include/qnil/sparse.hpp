#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qnil/cyclotomic.hpp"

namespace qnil {

// Sparse vector over Q(zeta_l): (index, value) pairs, strictly increasing
// index, no stored zeros.
using SparseVec = std::vector<std::pair<std::uint64_t, CycloNum>>;

SparseVec unit_vector(const Field& f, std::uint64_t i);
// a + c * b
SparseVec axpy(const SparseVec& a, const CycloNum& c, const SparseVec& b);
SparseVec scaled(const SparseVec& a, const CycloNum& c);
// Sorts, merges duplicates and drops zeros.
void canonicalize(SparseVec& v);

// Square sparse matrix in compressed-column form.  Coefficients are stored flat
// (degree() rationals per entry) to keep large operators compact.
class SparseOp {
 public:
  SparseOp() = default;
  SparseOp(const Field& f, std::uint64_t dim);

  const Field& field() const { return *f_; }
  std::uint64_t dim() const { return dim_; }
  std::uint64_t nnz() const { return rows_.size(); }

  std::uint64_t col_begin(std::uint64_t c) const { return ptr_[c]; }
  std::uint64_t col_end(std::uint64_t c) const { return ptr_[c + 1]; }
  std::uint64_t row(std::uint64_t e) const { return rows_[e]; }
  CycloNum value(std::uint64_t e) const;
  SparseVec column(std::uint64_t c) const;
  // Value at (r, c), zero when absent.
  CycloNum at(std::uint64_t r, std::uint64_t c) const;

  // Column-by-column assembly; columns must be appended in order.
  void append_column(const SparseVec& col);
  // Assembles from independently built columns (e.g. by worker threads).
  static SparseOp from_columns(const Field& f, std::vector<SparseVec>&& cols);

  bool is_diagonal() const;
  std::size_t max_column_nnz() const;

  friend bool operator==(const SparseOp& a, const SparseOp& b);

 private:
  const Field* f_ = nullptr;
  std::uint64_t dim_ = 0;
  std::vector<std::uint64_t> ptr_{0};
  std::vector<std::uint64_t> rows_;
  std::vector<Rational> coeffs_;
};

SparseOp identity(const Field& f, std::uint64_t dim);
SparseVec apply(const SparseOp& op, const SparseVec& v);
// compose(a, b) applies b first.
SparseOp compose(const SparseOp& a, const SparseOp& b);
SparseOp power(const SparseOp& op, int m);

}  // namespace qnil
