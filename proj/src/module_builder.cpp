#include "qnil/module_builder.hpp"

#include <map>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qnil/errors.hpp"

namespace qnil {

int ModuleSpec::lowest() const {
  if (family == Family::G) return k == 1 ? 0 : 1;
  return k - 1;
}

void ModuleSpec::validate() const {
  if (l < 3 || l % 2 == 0) throw InvalidOrder("l must be an odd integer >= 3, got " + std::to_string(l));
  validate_rank(family, n, k);
  if (family == Family::G && l % 3 == 0)
    throw UnsupportedConfig("G2 needs l not divisible by 3 (eps_2 = eps^3 must stay primitive)");
  // t_{n,n-1} carries exponents i/j for j <= n; no root choice is made outside the coprime case
  if (family == Family::A)
    for (int j = 2; j <= n; ++j)
      if (std::gcd(j, l) != 1)
        throw UnsupportedDenominator("A" + std::to_string(n) + " needs gcd(" + std::to_string(j) + ", l) = 1, l = " +
                                     std::to_string(l));
  const int want = top() - k + 1;
  if (static_cast<int>(lambda.size()) != want)
    throw ShapeError("lambda must have " + std::to_string(want) + " entries, got " + std::to_string(lambda.size()));
}

std::vector<long> ModuleSpec::full_weight() const {
  std::vector<long> w(rank(), 0);
  for (std::size_t j = 0; j < lambda.size(); ++j) w[k - 1 + j] = lambda[j];
  return w;
}

ParamTable ModuleSpec::effective_params() const { return params ? *params : default_params(family, n, convention); }

std::string ModuleSpec::label() const {
  std::ostringstream os;
  os << family_char(family) << n << " k=" << k << " l=" << l << " lambda=(";
  for (std::size_t i = 0; i < lambda.size(); ++i) os << (i ? "," : "") << lambda[i];
  os << ")";
  if (convention == Convention::Printed) os << " printed";
  if (family == Family::D && dvariant != DVariant::Swap) os << " dvariant=" << to_string(dvariant);
  if (ghosts == GhostMode::Raw) os << " raw-ghosts";
  if (params) os << " custom-params";
  return os.str();
}

namespace {

// c . m + k (mod l) over the coordinate positions of the shape.
struct Affine {
  std::vector<int> c;
  int k = 0;
};

struct Path {
  std::vector<int> shift;  // per position, mod l
  Affine diag;
  std::vector<std::pair<Affine, int>> braces;  // (argument, d residue)
  CycloNum coef;
};

class Compiler {
 public:
  explicit Compiler(const ModuleSpec& s)
      : spec_(s), shape_(shape_for(s.family, s.n, s.k, s.l)), field_(Field::get(s.l)),
        params_(s.effective_params()), nu_(weight_shifts(s.family, s.n, s.k, s.lambda, s.convention)),
        bottom_(bottom_torus(s.family, s.n, s.k, s.convention)), l_(s.l) {
    for (int level : levels_for(s.family, s.n, s.k)) {
      Rational nu = nu_.count(level) ? nu_.at(level) : Rational(0);
      tables_.emplace(level, rho(s.family, level, nu, s.dvariant, s.convention));
    }
    const int np = shape_.size();
    b_.resize(np);
    a_.resize(np);
    for (int p = 0; p < np; ++p) {
      b_[p] = params_.b_at(shape_.coord(p)).residue(l_);
      a_[p] = params_.a_at(shape_.coord(p));
      if (a_[p].is_zero()) throw PreconditionError("a-parameters must be nonzero");
    }
  }

  const FactorShape& shape() const { return shape_; }
  const Field& field() const { return field_; }

  Affine zero() const { return Affine{std::vector<int>(shape_.size(), 0), 0}; }

  void add_scaled(Affine& acc, const Affine& x, int r) const {
    for (std::size_t p = 0; p < acc.c.size(); ++p) acc.c[p] = field_.mod(acc.c[p] + static_cast<long>(r) * x.c[p]);
    acc.k = field_.mod(acc.k + static_cast<long>(r) * x.k);
  }

  // Exponent form of the level-j torus generator t_{i,j} (ghost when i = rank + 1).
  const Affine& t_form(int j, int i) {
    auto key = std::make_pair(j, i);
    if (auto it = t_cache_.find(key); it != t_cache_.end()) return it->second;
    Affine out = zero();
    const int lowest = spec_.lowest();
    if (i >= 1) {
      if (i > level_rank(spec_.family, j)) {
        Monomial g = (j <= lowest || spec_.ghosts == GhostMode::Raw) ? ghost_raw(spec_.family, j, nu_, spec_.convention)
                                                                    : ghost_closed(spec_.family, j, nu_, spec_.convention);
        out = diag_form(g);
      } else if (j <= lowest) {
        if (auto it = bottom_.find(i); it != bottom_.end()) out.k = it->second.residue(l_);
      } else {
        out = diag_form(tables_.at(j).t.at(i));
      }
    }
    return t_cache_.emplace(key, std::move(out)).first->second;
  }

  Affine diag_form(const Monomial& m) {
    Affine out = zero();
    for (const auto& a : m) {
      switch (a.kind) {
        case AtomKind::Z: {
          int p = shape_.position(a.level, a.tilde, a.index);
          if (p < 0) break;
          int r = a.exp.residue(l_);
          out.c[p] = field_.mod(out.c[p] + r);
          out.k = field_.mod(out.k + static_cast<long>(r) * b_[p]);
          break;
        }
        case AtomKind::S: out.k = field_.mod(out.k + a.exp.residue(l_)); break;
        case AtomKind::T: {
          Affine t = t_form(a.level, a.index);
          add_scaled(out, t, a.exp.residue(l_));
          break;
        }
        default: throw InternalConsistency("non-diagonal atom " + pretty(a) + " in a diagonal monomial");
      }
    }
    return out;
  }

  // Re-bases a form evaluated after the accumulated shift onto the initial state.
  Affine at_shift(Affine f, const std::vector<int>& shift) const {
    long k = f.k;
    for (std::size_t p = 0; p < shift.size(); ++p) k += static_cast<long>(f.c[p]) * shift[p];
    f.k = field_.mod(k);
    return f;
  }

  std::vector<Path> expand_generator(char kind, int level, int i) {
    Path start;
    start.shift.assign(shape_.size(), 0);
    start.diag = zero();
    start.coef = CycloNum(field_, Rational(1));
    std::vector<Path> out;
    expand_gen(kind, level, i, std::move(start), out);
    return out;
  }

  Affine top_t(int i) { return t_form(spec_.top(), i); }

 private:
  void expand_gen(char kind, int level, int i, Path p, std::vector<Path>& out) {
    if (level <= spec_.lowest() || i < 1 || i > level_rank(spec_.family, level)) return;
    const auto& tb = tables_.at(level);
    const Expr& ex = kind == 'e' ? tb.e.at(i) : tb.f.at(i);
    for (const auto& term : ex) expand_term(term, p, out);
  }

  void expand_term(const Term& term, const Path& start, std::vector<Path>& out) {
    std::vector<Path> cur{start};
    for (auto it = term.mono.rbegin(); it != term.mono.rend(); ++it) {
      const Atom& a = *it;
      std::vector<Path> next;
      for (auto& p : cur) {
        switch (a.kind) {
          case AtomKind::X: {
            int pos = shape_.position(a.level, a.tilde, a.index);
            if (pos < 0) break;
            // x^{power} moves m_pos by -power and scales by a^{power}
            p.shift[pos] = field_.mod(p.shift[pos] - a.power);
            p.coef *= a.power > 0 ? a_[pos] : Rational(1) / a_[pos];
            next.push_back(std::move(p));
            break;
          }
          case AtomKind::E:
          case AtomKind::F:
            expand_gen(a.kind == AtomKind::E ? 'e' : 'f', a.level, a.index, std::move(p), next);
            break;
          default: {
            Affine f = at_shift(diag_form({a}), p.shift);
            add_scaled(p.diag, f, 1);
            next.push_back(std::move(p));
          }
        }
      }
      cur = std::move(next);
    }
    for (auto& p : cur) {
      if (term.brace) {
        int d = term.brace->d.residue(l_);
        if (d == 0) throw DegenerateBracket("bracket denominator eps^d - eps^-d vanishes (d = " + term.brace->d.str() + ")");
        p.braces.emplace_back(at_shift(diag_form(term.brace->arg), p.shift), d);
      }
      for (const auto& q : term.coefs) p.coef *= qint(field_, q.r, q.d);
      if (!p.coef.is_zero()) out.push_back(std::move(p));
    }
  }

  const ModuleSpec& spec_;
  FactorShape shape_;
  const Field& field_;
  ParamTable params_;
  std::map<int, Rational> nu_;
  std::map<int, Rational> bottom_;
  int l_;
  std::map<int, RhoTable> tables_;
  std::vector<int> b_;
  std::vector<Rational> a_;
  std::map<std::pair<int, int>, Affine> t_cache_;
};

int eval(const Affine& f, const int* m, const Field& F) {
  long s = f.k;
  for (std::size_t p = 0; p < f.c.size(); ++p) s += static_cast<long>(f.c[p]) * m[p];
  return F.mod(s);
}

SparseVec eval_column(const std::vector<Path>& paths, const FactorShape& shape, const Field& F,
                      const std::vector<std::vector<CycloNum>>& brace_tab, std::uint64_t col, std::vector<int>& m) {
  const int np = shape.size();
  for (int p = 0; p < np; ++p) m[p] = shape.digit(col, p);
  SparseVec out;
  for (const auto& path : paths) {
    CycloNum v = path.coef * F.zeta_pow(eval(path.diag, m.data(), F));
    bool zero = false;
    for (const auto& [arg, d] : path.braces) {
      int s = eval(arg, m.data(), F);
      if (s == 0) {
        zero = true;
        break;
      }
      v *= brace_tab[d][s];
    }
    if (zero || v.is_zero()) continue;
    std::uint64_t row = 0;
    for (int p = 0; p < np; ++p) row += static_cast<std::uint64_t>(F.mod(m[p] + path.shift[p])) * shape.stride(p);
    out.emplace_back(row, std::move(v));
  }
  canonicalize(out);
  return out;
}

SparseOp diagonal_op(const Field& F, const std::vector<int>& exps, int sign) {
  SparseOp op(F, exps.size());
  for (std::uint64_t c = 0; c < exps.size(); ++c) op.append_column({{c, F.zeta_pow(sign * exps[c])}});
  return op;
}

GeneratorSet skeleton(const ModuleSpec& spec) {
  spec.validate();
  GeneratorSet g;
  g.spec = spec;
  g.shape = shape_for(spec.family, spec.n, spec.k, spec.l);
  g.field = &Field::get(spec.l);
  g.cartan = cartan(spec.family, spec.n);
  return g;
}

}  // namespace

void finish_torus(GeneratorSet& g) {
  const Field& F = *g.field;
  g.t_inv.clear();
  g.t_exp.clear();
  for (const auto& t : g.t) {
    if (!t.is_diagonal()) throw InternalConsistency("torus generator is not diagonal");
    std::vector<int> ex(t.dim());
    for (std::uint64_t c = 0; c < t.dim(); ++c) {
      CycloNum v = t.at(c, c);
      int s = -1;
      for (int r = 0; r < F.l() && s < 0; ++r)
        if (v == F.zeta_pow(r)) s = r;
      if (s < 0) throw InternalConsistency("torus eigenvalue is not an l-th root of unity");
      ex[c] = s;
    }
    g.t_inv.push_back(diagonal_op(F, ex, -1));
    g.t_exp.push_back(std::move(ex));
  }
}

GeneratorSet build(const ModuleSpec& spec, const BuildOptions& opt) {
  GeneratorSet g = skeleton(spec);
  Compiler comp(spec);
  const Field& F = *g.field;
  const FactorShape& shape = g.shape;
  const std::uint64_t dim = shape.dim();
  const int r = spec.rank();

  std::vector<std::vector<CycloNum>> brace_tab(F.l());
  for (int d = 1; d < F.l(); ++d)
    for (int s = 0; s < F.l(); ++s) brace_tab[d].push_back(F.brace(s, d));

  auto build_op = [&](const std::vector<Path>& paths) {
    std::vector<SparseVec> cols(dim);
    const long long n = static_cast<long long>(dim);
    if (opt.parallel) {
#pragma omp parallel num_threads(opt.threads > 0 ? opt.threads : omp_get_max_threads())
      {
        std::vector<int> m(shape.size());
#pragma omp for schedule(static)
        for (long long c = 0; c < n; ++c) cols[c] = eval_column(paths, shape, F, brace_tab, c, m);
      }
    } else {
      std::vector<int> m(shape.size());
      for (long long c = 0; c < n; ++c) cols[c] = eval_column(paths, shape, F, brace_tab, c, m);
    }
    return SparseOp::from_columns(F, std::move(cols));
  };

  for (int i = 1; i <= r; ++i) {
    g.e.push_back(build_op(comp.expand_generator('e', spec.top(), i)));
    g.f.push_back(build_op(comp.expand_generator('f', spec.top(), i)));
  }
  for (int i = 1; i <= r; ++i) {
    Affine a = comp.top_t(i);
    std::vector<int> ex(dim);
    std::vector<int> m(shape.size());
    for (std::uint64_t c = 0; c < dim; ++c) {
      for (int p = 0; p < shape.size(); ++p) m[p] = shape.digit(c, p);
      ex[c] = eval(a, m.data(), F);
    }
    g.t.push_back(diagonal_op(F, ex, 1));
    g.t_inv.push_back(diagonal_op(F, ex, -1));
    g.t_exp.push_back(std::move(ex));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Reference interpreter: applies the symbolic tables to basis vectors directly.

namespace {

class Interpreter {
 public:
  explicit Interpreter(const ModuleSpec& s)
      : spec_(s), shape_(shape_for(s.family, s.n, s.k, s.l)), F_(Field::get(s.l)), params_(s.effective_params()),
        nu_(weight_shifts(s.family, s.n, s.k, s.lambda, s.convention)),
        bottom_(bottom_torus(s.family, s.n, s.k, s.convention)) {
    for (int level : levels_for(s.family, s.n, s.k)) {
      Rational nu = nu_.count(level) ? nu_.at(level) : Rational(0);
      tables_.emplace(level, rho(s.family, level, nu, s.dvariant, s.convention));
    }
  }

  // Rational exponent of a diagonal monomial on basis vector m.
  Rational exponent(const Monomial& mono, const BasisIndex& m) const {
    Rational s;
    for (const auto& a : mono) {
      switch (a.kind) {
        case AtomKind::Z: {
          int p = shape_.position(a.level, a.tilde, a.index);
          if (p < 0) break;
          s += a.exp * (Rational(m[p]) + params_.b_at(shape_.coord(p)));
          break;
        }
        case AtomKind::S: s += a.exp; break;
        case AtomKind::T: s += a.exp * t_exponent(a.level, a.index, m); break;
        default: throw InternalConsistency("non-diagonal atom in a diagonal monomial");
      }
    }
    return s;
  }

  Rational t_exponent(int j, int i, const BasisIndex& m) const {
    if (i < 1) return Rational(0);
    if (i > level_rank(spec_.family, j)) {
      bool raw = j <= spec_.lowest() || spec_.ghosts == GhostMode::Raw;
      return exponent(raw ? ghost_raw(spec_.family, j, nu_, spec_.convention)
                          : ghost_closed(spec_.family, j, nu_, spec_.convention),
                      m);
    }
    if (j <= spec_.lowest()) {
      auto it = bottom_.find(i);
      return it == bottom_.end() ? Rational(0) : it->second;
    }
    return exponent(tables_.at(j).t.at(i), m);
  }

  using Vec = std::map<std::uint64_t, CycloNum>;

  Vec apply_gen(char kind, int level, int i, const Vec& v) const {
    Vec out;
    if (level <= spec_.lowest() || i < 1 || i > level_rank(spec_.family, level)) return out;
    const auto& tb = tables_.at(level);
    for (const auto& term : kind == 'e' ? tb.e.at(i) : tb.f.at(i))
      for (auto& [r, c] : apply_term(term, v)) out[r] += c;
    drop_zeros(out);
    return out;
  }

  const FactorShape& shape() const { return shape_; }
  const Field& field() const { return F_; }

 private:
  static void drop_zeros(Vec& v) {
    for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
  }

  Vec apply_term(const Term& term, const Vec& v) const {
    Vec cur = v;
    for (auto it = term.mono.rbegin(); it != term.mono.rend(); ++it) {
      const Atom& a = *it;
      Vec next;
      if (a.kind == AtomKind::X) {
        int p = shape_.position(a.level, a.tilde, a.index);
        if (p < 0) return {};
        Rational av = params_.a_at(shape_.coord(p));
        if (a.power < 0) av = Rational(1) / av;
        for (const auto& [c, x] : cur) next[shape_.shifted(c, p, -a.power)] += x * av;
      } else if (a.kind == AtomKind::E || a.kind == AtomKind::F) {
        next = apply_gen(a.kind == AtomKind::E ? 'e' : 'f', a.level, a.index, cur);
      } else {
        for (const auto& [c, x] : cur) next[c] += x * eps_pow(F_, exponent({a}, shape_.decode(c)));
      }
      cur = std::move(next);
    }
    Vec out;
    for (auto& [c, x] : cur) {
      CycloNum y = x;
      if (term.brace) {
        Rational s = exponent(term.brace->arg, shape_.decode(c));
        CycloNum z = eps_pow(F_, s);
        CycloNum den = eps_pow(F_, term.brace->d) - eps_pow(F_, -term.brace->d);
        if (den.is_zero()) throw DegenerateBracket("bracket denominator vanishes");
        y *= (z - eps_pow(F_, -s)) / den;
      }
      for (const auto& q : term.coefs) y *= qint(F_, q.r, q.d);
      out[c] += y;
    }
    drop_zeros(out);
    return out;
  }

  const ModuleSpec& spec_;
  FactorShape shape_;
  const Field& F_;
  ParamTable params_;
  std::map<int, Rational> nu_;
  std::map<int, Rational> bottom_;
  std::map<int, RhoTable> tables_;
};

}  // namespace

GeneratorSet build_reference(const ModuleSpec& spec) {
  GeneratorSet g = skeleton(spec);
  Interpreter in(spec);
  const Field& F = *g.field;
  const std::uint64_t dim = g.shape.dim();
  const int top = spec.top();
  for (int i = 1; i <= spec.rank(); ++i) {
    for (char kind : {'e', 'f'}) {
      SparseOp op(F, dim);
      for (std::uint64_t c = 0; c < dim; ++c) {
        Interpreter::Vec v{{c, CycloNum(F, Rational(1))}};
        SparseVec col;
        for (auto& [r, x] : in.apply_gen(kind, top, i, v)) col.emplace_back(r, x);
        op.append_column(col);
      }
      (kind == 'e' ? g.e : g.f).push_back(std::move(op));
    }
    SparseOp t(F, dim);
    for (std::uint64_t c = 0; c < dim; ++c)
      t.append_column({{c, eps_pow(F, in.t_exponent(top, i, g.shape.decode(c)))}});
    g.t.push_back(std::move(t));
  }
  finish_torus(g);
  return g;
}

}  // namespace qnil
