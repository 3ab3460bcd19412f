#include "qnil/rational.hpp"

#include <limits>
#include <numeric>

#include "qnil/errors.hpp"

namespace qnil {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 uabs(i128 x) { return x < 0 ? u128(-x) : u128(x); }

bool fits(i128 x) { return x > kMin64 && x <= kMax64; }  // excludes INT64_MIN so negation is safe

mpz_class to_mpz(i128 x) {
  // Only called on values that came from 64-bit products, so two limbs suffice.
  bool neg = x < 0;
  u128 u = uabs(x);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

bool mpz_small(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) && z != mpz_class(std::numeric_limits<long>::min()); }

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  u128 g = gcd128(uabs(nn), u128(dd));
  if (g > 1) {
    nn /= i128(g);
    dd /= i128(g);
  }
  if (fits(nn) && fits(dd)) {
    set_small(std::int64_t(nn), std::int64_t(dd));
  } else {
    mpq_class q(to_mpz(nn), to_mpz(dd));
    q.canonicalize();
    assign_big(std::move(q));
  }
}

Rational::Rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  assign_big(std::move(c));
}

Rational& Rational::operator=(const Rational& o) {
  if (this == &o) return *this;
  num_ = o.num_;
  den_ = o.den_;
  if (o.big_)
    big_ = std::make_unique<mpq_class>(*o.big_);
  else
    big_.reset();
  return *this;
}

void Rational::assign_big(mpq_class q) {
  if (mpz_small(q.get_num()) && mpz_small(q.get_den())) {
    set_small(q.get_num().get_si(), q.get_den().get_si());
    return;
  }
  if (big_)
    *big_ = std::move(q);
  else
    big_ = std::make_unique<mpq_class>(std::move(q));
  num_ = 0;
  den_ = 1;
}

Rational Rational::parse(std::string_view s) {
  if (s.empty()) throw ParseError("empty rational");
  std::string str(s);
  mpq_class q;
  if (q.set_str(str, 10) != 0) throw ParseError("malformed rational: " + str);
  if (q.get_den() == 0) throw ParseError("zero denominator: " + str);
  return Rational(q);
}

std::string Rational::str() const {
  if (big_) return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  return std::to_string(num_) + "/" + std::to_string(den_);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const { return big_ ? big_->get_num() : mpz_class(static_cast<long>(num_)); }
mpz_class Rational::denominator() const { return big_ ? big_->get_den() : mpz_class(static_cast<long>(den_)); }

int Rational::residue(int m) const {
  if (m <= 0) throw std::invalid_argument("residue: modulus must be positive");
  return static_cast<int>(residue(static_cast<std::uint64_t>(m)));
}

namespace {

// Inverse of a mod m for coprime a, m (0 < a < m); 0 when not invertible.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, nt = 1, r = m, nr = a;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) return 0;
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

}  // namespace

std::uint64_t Rational::residue(std::uint64_t m) const {
  if (m == 0) throw std::invalid_argument("residue: modulus must be positive");
  if (m == 1) return 0;
  std::uint64_t p, q;
  if (!big_) {
    __int128 n = num_ % static_cast<__int128>(m);
    if (n < 0) n += m;
    p = static_cast<std::uint64_t>(n);
    q = static_cast<std::uint64_t>(den_ % static_cast<__int128>(m));
  } else {
    mpz_class mod;
    mpz_import(mod.get_mpz_t(), 1, 1, sizeof(m), 0, 0, &m);
    mpz_class a, b;
    mpz_fdiv_r(a.get_mpz_t(), big_->get_num_mpz_t(), mod.get_mpz_t());
    mpz_fdiv_r(b.get_mpz_t(), big_->get_den_mpz_t(), mod.get_mpz_t());
    p = q = 0;
    mpz_export(&p, nullptr, 1, sizeof(p), 0, 0, a.get_mpz_t());
    mpz_export(&q, nullptr, 1, sizeof(q), 0, 0, b.get_mpz_t());
  }
  std::uint64_t inv = q == 0 ? 0 : inverse_mod(q, m);
  if (inv == 0)
    throw UnsupportedDenominator("exponent " + str() + " has denominator sharing a factor with " + std::to_string(m));
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(p) * inv % m);
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;  // num_ != INT64_MIN by the fits() invariant
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, o.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
        num_ = s;
        return *this;
      }
    }
    i128 n, d;
    if (den_ == o.den_) {
      n = i128(num_) + o.num_;
      d = den_;
    } else {
      n = i128(num_) * o.den_ + i128(o.num_) * den_;
      d = i128(den_) * o.den_;
    }
    if (n == 0) {
      set_small(0, 1);
      return *this;
    }
    u128 g = gcd128(uabs(n), u128(d));
    if (g > 1) {
      n /= i128(g);
      d /= i128(g);
    }
    if (fits(n) && fits(d)) {
      set_small(std::int64_t(n), std::int64_t(d));
      return *this;
    }
  }
  assign_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (!o.big_) {
    Rational neg;
    neg.num_ = -o.num_;
    neg.den_ = o.den_;
    return *this += neg;
  }
  return *this += -o;
}

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      set_small(0, 1);
      return *this;
    }
    std::int64_t a = num_, b = den_, c = o.num_, d = o.den_;
    if (b != 1 || d != 1) {
      std::int64_t g1 = std::gcd(a, d);
      std::int64_t g2 = std::gcd(c, b);
      a /= g1;
      d /= g1;
      c /= g2;
      b /= g2;
    }
    i128 n = i128(a) * c;
    i128 den = i128(b) * d;
    if (fits(n) && fits(den)) {
      set_small(std::int64_t(n), std::int64_t(den));
      return *this;
    }
  }
  assign_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!o.big_) {
    Rational inv;
    if (o.num_ < 0) {
      inv.num_ = -o.den_;
      inv.den_ = -o.num_;
    } else {
      inv.num_ = o.den_;
      inv.den_ = o.num_;
    }
    return *this *= inv;
  }
  assign_big(to_mpq() / o.to_mpq());
  return *this;
}

void Rational::add_mul(const Rational& a, const Rational& b) {
  if (!big_ && !a.big_ && !b.big_ && den_ == 1 && a.den_ == 1 && b.den_ == 1) {
    std::int64_t p, s;
    if (!__builtin_mul_overflow(a.num_, b.num_, &p) && !__builtin_add_overflow(num_, p, &s) &&
        s != std::numeric_limits<std::int64_t>::min()) {
      num_ = s;
      return;
    }
  }
  Rational t = a;
  t *= b;
  *this += t;
}

void Rational::sub_mul(const Rational& a, const Rational& b) {
  if (!big_ && !a.big_ && !b.big_ && den_ == 1 && a.den_ == 1 && b.den_ == 1) {
    std::int64_t p, s;
    if (!__builtin_mul_overflow(a.num_, b.num_, &p) && !__builtin_sub_overflow(num_, p, &s) &&
        s != std::numeric_limits<std::int64_t>::min()) {
      num_ = s;
      return;
    }
  }
  Rational t = a;
  t *= b;
  *this -= t;
}

bool operator==(const Rational& a, const Rational& b) {
  // Both sides are canonical, and a value is big only if it does not fit small.
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = i128(a.num_) * b.den_, r = i128(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace qnil
