#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qnil/cyclotomic.hpp"

namespace qnil {

// Reduction Z_(p)[zeta_l] -> F_p, zeta -> omega, for a prime p = 1 (mod l) and
// omega of exact order l.  Rank over F_p never exceeds rank over Q(zeta_l), so
// a nullity computed here is an upper bound for the exact nullity.
class ModP {
 public:
  // The `index`-th prime below 2^31 that is 1 mod l.
  ModP(const Field& f, int index = 0);

  std::uint64_t p() const { return p_; }
  std::uint64_t omega() const { return omega_; }
  // nullopt when a coefficient denominator is divisible by p.
  std::optional<std::uint64_t> reduce(const CycloNum& x) const;

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

 private:
  const Field* f_;
  std::uint64_t p_ = 0, omega_ = 0;
  std::vector<std::uint64_t> omega_pow_;
};

using ModPVec = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

// Incremental row echelon form over F_p on an index space [0, width).
// Each stored row has a distinct leading index and leading coefficient 1.
class ModPEchelon {
 public:
  ModPEchelon(const ModP& mp, std::size_t width);
  // Returns true when v was independent of the rows so far (and stores it).
  bool insert(const ModPVec& v);
  std::size_t rank() const { return rows_.size(); }

 private:
  const ModP& mp_;
  std::vector<std::uint64_t> dense_;
  std::vector<char> mark_;
  std::unordered_map<std::uint32_t, ModPVec> rows_;
};

}  // namespace qnil
