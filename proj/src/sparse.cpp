#include "qnil/sparse.hpp"

#include <algorithm>

#include "qnil/errors.hpp"

namespace qnil {

SparseVec unit_vector(const Field& f, std::uint64_t i) { return {{i, CycloNum(f, Rational(1))}}; }

void canonicalize(SparseVec& v) {
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i + 1;
    CycloNum acc = std::move(v[i].second);
    for (; j < v.size() && v[j].first == v[i].first; ++j) acc += v[j].second;
    if (!acc.is_zero()) {
      v[out].first = v[i].first;
      v[out].second = std::move(acc);
      ++out;
    }
    i = j;
  }
  v.resize(out);
}

SparseVec axpy(const SparseVec& a, const CycloNum& c, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      CycloNum v = c * b[j].second;
      if (!v.is_zero()) out.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      CycloNum v = a[i].second;
      v.add_mul(c, b[j].second);
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec scaled(const SparseVec& a, const CycloNum& c) {
  SparseVec out;
  if (c.is_zero()) return out;
  out.reserve(a.size());
  for (const auto& [i, v] : a) out.emplace_back(i, v * c);
  return out;
}

SparseOp::SparseOp(const Field& f, std::uint64_t dim) : f_(&f), dim_(dim) { ptr_.reserve(dim + 1); }

CycloNum SparseOp::value(std::uint64_t e) const {
  const int n = f_->degree();
  CycloNum::Coeffs c(coeffs_.begin() + e * n, coeffs_.begin() + (e + 1) * n);
  return CycloNum(*f_, std::move(c));
}

SparseVec SparseOp::column(std::uint64_t c) const {
  SparseVec out;
  out.reserve(col_end(c) - col_begin(c));
  for (auto e = col_begin(c); e < col_end(c); ++e) out.emplace_back(rows_[e], value(e));
  return out;
}

CycloNum SparseOp::at(std::uint64_t r, std::uint64_t c) const {
  auto b = rows_.begin() + col_begin(c), e = rows_.begin() + col_end(c);
  auto it = std::lower_bound(b, e, r);
  if (it == e || *it != r) return CycloNum(*f_);
  return value(static_cast<std::uint64_t>(it - rows_.begin()));
}

void SparseOp::append_column(const SparseVec& col) {
  if (ptr_.size() > dim_) throw DimensionMismatch("too many columns appended");
  for (const auto& [r, v] : col) {
    if (r >= dim_) throw DimensionMismatch("row index out of range");
    if (v.is_zero()) continue;
    rows_.push_back(r);
    auto cs = v.coeffs();
    if (static_cast<int>(cs.size()) != f_->degree()) throw ShapeError("entry from a different field");
    coeffs_.insert(coeffs_.end(), cs.begin(), cs.end());
  }
  ptr_.push_back(rows_.size());
}

SparseOp SparseOp::from_columns(const Field& f, std::vector<SparseVec>&& cols) {
  SparseOp op(f, cols.size());
  std::size_t total = 0;
  for (const auto& c : cols) total += c.size();
  op.rows_.reserve(total);
  op.coeffs_.reserve(total * f.degree());
  for (auto& c : cols) {
    op.append_column(c);
    SparseVec().swap(c);
  }
  return op;
}

bool SparseOp::is_diagonal() const {
  for (std::uint64_t c = 0; c < dim_; ++c)
    for (auto e = col_begin(c); e < col_end(c); ++e)
      if (rows_[e] != c) return false;
  return true;
}

std::size_t SparseOp::max_column_nnz() const {
  std::size_t m = 0;
  for (std::uint64_t c = 0; c < dim_; ++c) m = std::max<std::size_t>(m, col_end(c) - col_begin(c));
  return m;
}

bool operator==(const SparseOp& a, const SparseOp& b) {
  return a.f_ == b.f_ && a.dim_ == b.dim_ && a.ptr_ == b.ptr_ && a.rows_ == b.rows_ && a.coeffs_ == b.coeffs_;
}

SparseOp identity(const Field& f, std::uint64_t dim) {
  SparseOp op(f, dim);
  for (std::uint64_t c = 0; c < dim; ++c) op.append_column(unit_vector(f, c));
  return op;
}

SparseVec apply(const SparseOp& op, const SparseVec& v) {
  SparseVec out;
  for (const auto& [c, x] : v) {
    if (c >= op.dim()) throw DimensionMismatch("vector index outside operator dimension");
    for (auto e = op.col_begin(c); e < op.col_end(c); ++e) out.emplace_back(op.row(e), op.value(e) * x);
  }
  canonicalize(out);
  return out;
}

SparseOp compose(const SparseOp& a, const SparseOp& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("compose: operator dimensions differ");
  SparseOp out(a.field(), a.dim());
  for (std::uint64_t c = 0; c < b.dim(); ++c) out.append_column(qnil::apply(a, b.column(c)));
  return out;
}

SparseOp power(const SparseOp& op, int m) {
  if (m < 0) throw PreconditionError("negative operator power");
  SparseOp out(op.field(), op.dim());
  for (std::uint64_t c = 0; c < op.dim(); ++c) {
    SparseVec v = unit_vector(op.field(), c);
    for (int i = 0; i < m && !v.empty(); ++i) v = qnil::apply(op, v);
    out.append_column(v);
  }
  return out;
}

}  // namespace qnil
