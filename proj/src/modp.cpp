#include "qnil/modp.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include <gmpxx.h>

#include "qnil/errors.hpp"

namespace qnil {

namespace {

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

ModP::ModP(const Field& f, int index) : f_(&f) {
  const std::uint64_t l = f.l();
  std::uint64_t cand = ((std::uint64_t(1) << 31) - 1) / l * l + 1;
  if (cand >= (std::uint64_t(1) << 31)) cand -= l;
  int found = -1;
  for (; cand > l; cand -= l) {
    mpz_class z(static_cast<unsigned long>(cand));
    if (mpz_probab_prime_p(z.get_mpz_t(), 30) == 0) continue;
    if (++found == index) break;
  }
  p_ = cand;
  const auto qs = prime_factors(static_cast<int>(l));
  for (std::uint64_t g = 2;; ++g) {
    std::uint64_t w = pow(g, (p_ - 1) / l);
    bool exact = w != 1;
    for (int q : qs) exact = exact && pow(w, l / q) != 1;
    if (exact) {
      omega_ = w;
      break;
    }
  }
  omega_pow_.resize(f.degree());
  std::uint64_t w = 1;
  for (int i = 0; i < f.degree(); ++i, w = mul(w, omega_)) omega_pow_[i] = w;
}

std::uint64_t ModP::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  a %= p_;
  for (; e; e >>= 1, a = mul(a, a))
    if (e & 1) r = mul(r, a);
  return r;
}

std::uint64_t ModP::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero mod p");
  return pow(a, p_ - 2);
}

std::optional<std::uint64_t> ModP::reduce(const CycloNum& x) const {
  if (x.field() == nullptr) return 0;
  std::uint64_t s = 0;
  auto cs = x.coeffs();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].is_zero()) continue;
    std::uint64_t r;
    try {
      r = cs[i].residue(p_);
    } catch (const UnsupportedDenominator&) {
      return std::nullopt;
    }
    s = add(s, mul(r, omega_pow_[i]));
  }
  return s;
}

ModPEchelon::ModPEchelon(const ModP& mp, std::size_t width) : mp_(mp), dense_(width, 0), mark_(width, 0) {}

bool ModPEchelon::insert(const ModPVec& v) {
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
  std::vector<std::uint32_t> touched;
  for (const auto& [i, x] : v) {
    if (x == 0) continue;
    dense_[i] = mp_.add(dense_[i], x);
    if (!mark_[i]) {
      mark_[i] = 1;
      touched.push_back(i);
      heap.push(i);
    }
  }
  bool independent = false;
  while (!heap.empty()) {
    std::uint32_t i = heap.top();
    heap.pop();
    std::uint64_t c = dense_[i];
    if (c == 0) continue;
    auto it = rows_.find(i);
    if (it == rows_.end()) {
      // New leading index: everything still pending lies beyond it.
      ModPVec row;
      std::uint64_t ic = mp_.inv(c);
      std::sort(touched.begin(), touched.end());
      for (std::uint32_t j : touched)
        if (j >= i && dense_[j] != 0) row.emplace_back(j, mp_.mul(dense_[j], ic));
      rows_.emplace(i, std::move(row));
      independent = true;
      break;
    }
    for (const auto& [j, x] : it->second) {
      dense_[j] = mp_.sub(dense_[j], mp_.mul(c, x));
      if (!mark_[j]) {
        mark_[j] = 1;
        touched.push_back(j);
        heap.push(j);
      }
    }
  }
  for (std::uint32_t j : touched) {
    dense_[j] = 0;
    mark_[j] = 0;
  }
  return independent;
}

}  // namespace qnil
