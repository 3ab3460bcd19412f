#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qnil {

// Exact reduced rational.  Values that fit in int64 numerator/denominator stay
// on an inline fast path; anything larger spills to an owned mpq_class and is
// demoted again as soon as it fits.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o);
  Rational& operator=(Rational&&) noexcept = default;

  // Accepts "p", "p/q", optional leading '-'.
  static Rational parse(std::string_view s);
  // Always "p/q" (denominator written even when 1) so serialized forms are uniform.
  std::string str() const;

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;
  bool is_small() const { return !big_; }

  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;

  // p * q^{-1} mod m in [0, m); throws UnsupportedDenominator if gcd(q, m) != 1.
  int residue(int m) const;
  // Same for a 64-bit modulus (used for reductions modulo word-size primes).
  std::uint64_t residue(std::uint64_t m) const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);
  // this += a * b without materialising the product on the fast path.
  void add_mul(const Rational& a, const Rational& b);
  void sub_mul(const Rational& a, const Rational& b);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;

  void assign_big(mpq_class q);
  void set_small(std::int64_t n, std::int64_t d) {
    num_ = n;
    den_ = d;
    big_.reset();
  }
};

Rational abs(const Rational& r);

}  // namespace qnil
