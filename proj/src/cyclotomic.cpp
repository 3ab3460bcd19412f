#include "qnil/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "qnil/errors.hpp"

namespace qnil {

namespace {

using Poly = std::vector<std::int64_t>;

// Exact quotient of integer polynomials; divisor must be monic.
Poly divide_exact(const Poly& num, const Poly& den) {
  Poly r = num;
  int dn = static_cast<int>(den.size()) - 1;
  int nn = static_cast<int>(r.size()) - 1;
  Poly q(nn - dn + 1, 0);
  for (int i = nn; i >= dn; --i) {
    std::int64_t c = r[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dn; ++j) r[i - dn + j] -= c * den[j];
  }
  for (int i = 0; i < dn; ++i)
    if (r[i] != 0) throw InternalConsistency("cyclotomic division left a remainder");
  return q;
}

Poly cyclotomic_poly(int n, std::map<int, Poly>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  Poly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = divide_exact(p, cyclotomic_poly(d, memo));
  memo[n] = p;
  return p;
}

}  // namespace

const Field& Field::get(int l) {
  if (l < 3 || l % 2 == 0) throw InvalidOrder("l must be an odd integer >= 3, got " + std::to_string(l));
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[l];
  if (!slot) slot.reset(new Field(l));
  return *slot;
}

Field::Field(int l) : l_(l) {
  std::map<int, Poly> memo;
  phi_ = cyclotomic_poly(l, memo);
  degree_ = static_cast<int>(phi_.size()) - 1;

  // x^s mod Phi_l for 0 <= s < l: multiply by x and reduce once per step.
  pow_.assign(l, Poly(degree_, 0));
  Poly cur(degree_, 0);
  cur[0] = 1;
  for (int s = 0; s < l; ++s) {
    pow_[s] = cur;
    std::int64_t top = cur[degree_ - 1];
    for (int i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1] - top * phi_[i];
    cur[0] = -top * phi_[0];
  }

  for (int j = 1; j < l; ++j)
    if (std::gcd(j, l) == 1) units_.push_back(j);

  zeta_.reserve(l);
  for (int s = 0; s < l; ++s) {
    CycloNum::Coeffs c(degree_);
    for (int i = 0; i < degree_; ++i) c[i] = Rational(pow_[s][i]);
    zeta_.emplace_back(*this, std::move(c));
  }

  brace_den_inv_.resize(l);
  for (int d = 1; d < l; ++d) {
    CycloNum den = zeta_[d] - zeta_[mod(-d)];
    // zeta^d - zeta^-d vanishes only when 2d = 0 mod l, impossible for odd l and d != 0.
    brace_den_inv_[d] = den.inverse();
  }
}

const CycloNum& Field::zeta_pow(int s) const { return zeta_[mod(s)]; }

const CycloNum& Field::brace_denominator_inverse(int d) const {
  int r = mod(d);
  if (r == 0) throw DegenerateBracket("bracket with d = 0 mod l");
  return brace_den_inv_[r];
}

CycloNum Field::brace(int s, int d) const {
  const CycloNum& inv = brace_denominator_inverse(d);
  int r = mod(s);
  if (r == 0) return CycloNum(*this);
  return (zeta_[r] - zeta_[mod(-r)]) * inv;
}

CycloNum::CycloNum(const Field& f, Coeffs c) : f_(&f), c_(std::move(c)) {
  if (static_cast<int>(c_.size()) != f.degree())
    throw ShapeError("expected " + std::to_string(f.degree()) + " coefficients, got " + std::to_string(c_.size()));
}

void CycloNum::adopt(const Field* f) {
  if (f_ == f || f == nullptr) return;
  if (f_ != nullptr) throw ShapeError("mixing elements of different cyclotomic fields");
  f_ = f;
  c_.assign(f->degree(), Rational());
}

bool CycloNum::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

bool CycloNum::is_one() const {
  if (c_.empty() || !c_[0].is_one()) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

CycloNum CycloNum::galois(int j) const {
  if (f_ == nullptr) return *this;
  if (std::gcd(j, f_->l()) != 1) throw PreconditionError("Galois index must be a unit mod l");
  CycloNum r(*f_);
  for (int i = 0; i < f_->degree(); ++i) {
    if (c_[i].is_zero()) continue;
    const auto& p = f_->power_coeffs(i * j);
    for (int t = 0; t < f_->degree(); ++t)
      if (p[t] != 0) r.c_[t].add_mul(c_[i], Rational(p[t]));
  }
  return r;
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in cyclotomic field");
  // a^{-1} = (prod_{j != 1} sigma_j(a)) / N(a), and N(a) is rational.
  CycloNum prod(*f_, Rational(1));
  for (int j : f_->units())
    if (j != 1) prod *= galois(j);
  CycloNum norm = *this * prod;
  for (int i = 1; i < f_->degree(); ++i)
    if (!norm.c_[i].is_zero()) throw InternalConsistency("field norm is not rational");
  Rational inv = Rational(1) / norm.c_[0];
  prod *= inv;
  return prod;
}

CycloNum CycloNum::operator-() const {
  CycloNum r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  adopt(o.f_);
  if (o.f_ != nullptr && o.f_ != f_) throw ShapeError("mixing elements of different cyclotomic fields");
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  adopt(o.f_);
  if (o.f_ != nullptr && o.f_ != f_) throw ShapeError("mixing elements of different cyclotomic fields");
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloNum& CycloNum::operator*=(const Rational& r) {
  if (r.is_zero()) {
    for (auto& x : c_) x = Rational();
    return *this;
  }
  if (r.is_one()) return *this;
  for (auto& x : c_)
    if (!x.is_zero()) x *= r;
  return *this;
}

void CycloNum::multiply_into(const Field& f, const Rational* a, const Rational* b, Rational* out, bool accumulate) {
  const int n = f.degree();
  boost::container::small_vector<Rational, 12> full(2 * n - 1);
  for (int i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < n; ++j)
      if (!b[j].is_zero()) full[i + j].add_mul(a[i], b[j]);
  }
  if (!accumulate)
    for (int i = 0; i < n; ++i) out[i] = Rational();
  for (int i = 0; i < n; ++i) out[i] += full[i];
  for (int e = n; e < 2 * n - 1; ++e) {
    if (full[e].is_zero()) continue;
    const auto& p = f.power_coeffs(e);
    for (int t = 0; t < n; ++t)
      if (p[t] != 0) out[t].add_mul(full[e], Rational(p[t]));
  }
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  if (a.f_ == nullptr || b.f_ == nullptr) {
    CycloNum z;
    z.adopt(a.f_ ? a.f_ : b.f_);
    return z;
  }
  if (a.f_ != b.f_) throw ShapeError("mixing elements of different cyclotomic fields");
  CycloNum r(*a.f_);
  CycloNum::multiply_into(*a.f_, a.c_.data(), b.c_.data(), r.c_.data(), false);
  return r;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) {
  *this = *this * o;
  return *this;
}

void CycloNum::add_mul(const CycloNum& a, const CycloNum& b) {
  if (a.f_ == nullptr || b.f_ == nullptr) return;
  adopt(a.f_);
  if (a.f_ != b.f_ || a.f_ != f_) throw ShapeError("mixing elements of different cyclotomic fields");
  multiply_into(*f_, a.c_.data(), b.c_.data(), c_.data(), true);
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  if (a.f_ == nullptr || b.f_ == nullptr) return a.is_zero() && b.is_zero();
  if (a.f_ != b.f_) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (!(a.c_[i] == b.c_[i])) return false;
  return true;
}

std::vector<std::string> CycloNum::to_strings() const {
  std::vector<std::string> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(x.str());
  return out;
}

CycloNum CycloNum::from_strings(const Field& f, const std::vector<std::string>& s) {
  if (static_cast<int>(s.size()) != f.degree())
    throw ShapeError("expected " + std::to_string(f.degree()) + " coefficients, got " + std::to_string(s.size()));
  Coeffs c;
  for (const auto& x : s) c.push_back(Rational::parse(x));
  return CycloNum(f, std::move(c));
}

std::string CycloNum::pretty() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string v = c_[i].str();
    if (v.size() > 2 && v.compare(v.size() - 2, 2, "/1") == 0) v.resize(v.size() - 2);
    if (i == 0)
      out += v;
    else
      out += v + "*z^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

CycloNum eps_pow(const Field& f, const Rational& r) { return f.zeta_pow(r.residue(f.l())); }

CycloNum qint(const Field& f, const Rational& r, const Rational& d) {
  int dr = d.residue(f.l());
  if (dr == 0) throw DegenerateBracket("q-integer with eps^d - eps^-d = 0 (d = " + d.str() + ")");
  return f.brace((d * r).residue(f.l()), dr);
}

CycloNum qfact(const Field& f, int m, const Rational& d) {
  if (m < 0) throw PreconditionError("q-factorial of a negative integer");
  CycloNum r(f, Rational(1));
  for (int i = 2; i <= m; ++i) r *= qint(f, Rational(i), d);
  return r;
}

CycloNum qbinom(const Field& f, int m, int k, const Rational& d) {
  if (m < 0) throw PreconditionError("Gaussian binomial with negative top");
  if (k < 0 || k > m) return CycloNum(f);
  const int v = d.residue(f.l());
  // Row-by-row Pascal: [m k] = v^k [m-1 k] + v^{-(m-k)} [m-1 k-1].
  std::vector<CycloNum> row{CycloNum(f, Rational(1))};
  for (int mm = 1; mm <= m; ++mm) {
    std::vector<CycloNum> next(mm + 1, CycloNum(f));
    for (int kk = 0; kk <= mm; ++kk) {
      if (kk < mm) next[kk].add_mul(f.zeta_pow(v * kk), row[kk]);
      if (kk > 0) next[kk].add_mul(f.zeta_pow(-v * (mm - kk)), row[kk - 1]);
    }
    row = std::move(next);
  }
  return row[k];
}

}  // namespace qnil
