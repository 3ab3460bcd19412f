#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "qnil/rational.hpp"

namespace qnil {

class CycloNum;

// Q(zeta_l) for odd l >= 3.  Instances are interned and never destroyed, so a
// CycloNum can hold a plain pointer to its field.
class Field {
 public:
  static const Field& get(int l);

  int l() const { return l_; }
  int degree() const { return degree_; }
  // Coefficients of Phi_l, constant term first; monic.
  const std::vector<std::int64_t>& phi() const { return phi_; }
  // zeta^s reduced mod Phi_l (s taken mod l), integer coefficients.
  const std::vector<std::int64_t>& power_coeffs(int s) const { return pow_[mod(s)]; }
  const CycloNum& zeta_pow(int s) const;
  // Units mod l, ascending; index set of the Galois group.
  const std::vector<int>& units() const { return units_; }

  // (zeta^s - zeta^-s) / (zeta^d - zeta^-d) for residues s, d; d must not be 0 mod l.
  CycloNum brace(int s, int d) const;
  const CycloNum& brace_denominator_inverse(int d) const;

  int mod(std::int64_t s) const {
    std::int64_t r = s % l_;
    return static_cast<int>(r < 0 ? r + l_ : r);
  }

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  explicit Field(int l);
  int l_;
  int degree_;
  std::vector<std::int64_t> phi_;
  std::vector<std::vector<std::int64_t>> pow_;
  std::vector<CycloNum> zeta_;
  std::vector<CycloNum> brace_den_inv_;  // indexed by d residue; entry 0 unused
  std::vector<int> units_;
};

// Element of Q(zeta_l) in the power basis 1, zeta, ..., zeta^{phi(l)-1}.
// A default-constructed value is a field-less zero that adopts the field of the
// first operand it meets; this keeps containers simple.
class CycloNum {
 public:
  using Coeffs = boost::container::small_vector<Rational, 6>;

  CycloNum() = default;
  explicit CycloNum(const Field& f) : f_(&f), c_(f.degree()) {}
  CycloNum(const Field& f, const Rational& r) : f_(&f), c_(f.degree()) { c_[0] = r; }
  CycloNum(const Field& f, Coeffs c);

  const Field* field() const { return f_; }
  std::span<const Rational> coeffs() const { return {c_.data(), c_.size()}; }
  const Rational& coeff(int i) const { return c_[i]; }

  bool is_zero() const;
  bool is_one() const;
  CycloNum inverse() const;
  // Image under zeta -> zeta^j (j a unit mod l).
  CycloNum galois(int j) const;

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator/=(const CycloNum& o) { return *this *= o.inverse(); }
  CycloNum& operator*=(const Rational& r);
  // this += a * b
  void add_mul(const CycloNum& a, const CycloNum& b);

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
  friend CycloNum operator*(CycloNum a, const Rational& r) { return a *= r; }
  friend bool operator==(const CycloNum& a, const CycloNum& b);

  // "p/q" strings, one per power-basis coefficient.
  std::vector<std::string> to_strings() const;
  static CycloNum from_strings(const Field& f, const std::vector<std::string>& s);
  // Human-readable, e.g. "1/2 + 3*z^2"; for diagnostics only.
  std::string pretty() const;

 private:
  const Field* f_ = nullptr;
  Coeffs c_;

  void adopt(const Field* f);
  static void multiply_into(const Field& f, const Rational* a, const Rational* b, Rational* out, bool accumulate);
};

// eps^r with the modular-inverse convention eps^{p/q} = zeta^{p q^{-1} mod l}.
CycloNum eps_pow(const Field& f, const Rational& r);
// [r]_{eps^d} = (eps^{dr} - eps^{-dr}) / (eps^d - eps^{-d}).
CycloNum qint(const Field& f, const Rational& r, const Rational& d);
CycloNum qfact(const Field& f, int m, const Rational& d);
// Symmetric Gaussian binomial at eps^d via the Pascal recurrence.
CycloNum qbinom(const Field& f, int m, int k, const Rational& d);

}  // namespace qnil
