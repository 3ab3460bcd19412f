#include "qnil/analysis.hpp"

#include <chrono>
#include <climits>
#include <deque>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qnil/errors.hpp"
#include "qnil/modp.hpp"

namespace qnil {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string basis_label(const GeneratorSet& g, std::uint64_t c) {
  auto m = g.shape.decode(c);
  std::string s = "v(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s + ")";
}

std::string describe(const GeneratorSet& g, const SparseVec& v) {
  if (v.empty()) return "0";
  std::string s = "(" + v.front().second.pretty() + ") " + basis_label(g, v.front().first);
  if (v.size() > 1) s += " + " + std::to_string(v.size() - 1) + " more";
  return s;
}

int threads_for(const VerifyOptions& opt) {
#ifdef _OPENMP
  return opt.threads > 0 ? opt.threads : omp_get_max_threads();
#else
  (void)opt;
  return 1;
#endif
}

// Smallest column for which ok(c) is false, or -1.  Deterministic under threading.
template <class Fn>
long long first_failure(std::uint64_t dim, const VerifyOptions& opt, Fn&& ok) {
  long long bad = LLONG_MAX;
  const long long n = static_cast<long long>(dim);
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic, 64) reduction(min : bad) num_threads(threads_for(opt))
    for (long long c = 0; c < n; ++c)
      if (c < bad && !ok(static_cast<std::uint64_t>(c))) bad = c;
  } else {
    for (long long c = 0; c < n; ++c)
      if (!ok(static_cast<std::uint64_t>(c))) {
        bad = c;
        break;
      }
  }
  return bad == LLONG_MAX ? -1 : bad;
}

SparseVec col(const SparseOp& op, std::uint64_t c) { return op.column(c); }

SparseVec sub(const SparseVec& a, const SparseVec& b) {
  const Field* f = !a.empty() ? a.front().second.field() : !b.empty() ? b.front().second.field() : nullptr;
  if (f == nullptr) return {};
  return axpy(a, CycloNum(*f, Rational(-1)), b);
}

SparseVec pow_apply(const SparseOp& op, SparseVec v, int m) {
  for (int i = 0; i < m && !v.empty(); ++i) v = qnil::apply(op, v);
  return v;
}

}  // namespace

nlohmann::json to_json(const Report& r) {
  return {{"claim", r.claim}, {"pass", r.pass}, {"witness", r.witness}, {"seconds", r.seconds}, {"data", r.data}};
}

nlohmann::json to_json(const std::vector<Report>& rs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rs) a.push_back(to_json(r));
  return a;
}

bool all_pass(const std::vector<Report>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

std::uint64_t weight_key(const GeneratorSet& g, std::uint64_t c) {
  std::uint64_t k = 0;
  for (int i = g.rank() - 1; i >= 0; --i) k = k * g.field->l() + g.t_exp[i][c];
  return k;
}

std::vector<int> weight_of(const GeneratorSet& g, std::uint64_t c) {
  const Field& F = *g.field;
  std::vector<int> w(g.rank());
  for (int i = 1; i <= g.rank(); ++i) {
    int dinv = (Rational(1) / g.cartan.sym(i)).residue(F.l());
    w[i - 1] = F.mod(static_cast<long>(g.t_exp[i - 1][c]) * dinv);
  }
  return w;
}

// ---------------------------------------------------------------------------

PrimitiveResult primitive_space(const GeneratorSet& g, const std::vector<int>& order_in, bool force_exact) {
  const Field& F = *g.field;
  const std::uint64_t dim = g.dim();
  std::vector<int> order = order_in;
  if (order.empty())
    for (int i = 1; i <= g.rank(); ++i) order.push_back(i);
  if (static_cast<int>(order.size()) != g.rank()) throw PreconditionError("order must list every e_i once");
  if (static_cast<std::uint64_t>(g.rank()) * dim >= (std::uint64_t(1) << 32))
    throw UnsupportedConfig("space too large for the primitive-space kernel");

  std::map<std::uint64_t, std::vector<std::uint64_t>> blocks;
  for (std::uint64_t c = 0; c < dim; ++c) blocks[weight_key(g, c)].push_back(c);

  PrimitiveResult res;
  res.space = Subspace(F);
  res.blocks = blocks.size();
  ModP mp(F);
  res.prime = mp.p();

  // Stacked image (e_{order[0]} v, e_{order[1]} v, ...) of basis vector c.
  auto stacked = [&](std::uint64_t c) {
    SparseVec out;
    for (std::size_t s = 0; s < order.size(); ++s)
      for (auto& [r, x] : col(g.e[order[s] - 1], c)) out.emplace_back(s * dim + r, std::move(x));
    return out;
  };

  for (const auto& [key, cols] : blocks) {
    std::vector<std::uint64_t> killed;  // basis vectors with e_i c = 0 for all i
    std::vector<SparseVec> images(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      images[j] = stacked(cols[j]);
      if (images[j].empty()) killed.push_back(cols[j]);
    }
    bool settled = false;
    if (!force_exact && killed.size() < cols.size()) {
      std::unordered_map<std::uint64_t, std::uint32_t> local;
      ModPVec v;
      bool reducible = true;
      std::vector<ModPVec> red(cols.size());
      for (std::size_t j = 0; j < cols.size() && reducible; ++j)
        for (const auto& [r, x] : images[j]) {
          auto rx = mp.reduce(x);
          if (!rx) {
            reducible = false;
            break;
          }
          auto [it, fresh] = local.emplace(r, static_cast<std::uint32_t>(local.size()));
          red[j].emplace_back(it->second, *rx);
        }
      if (reducible) {
        ModPEchelon ech(mp, local.size());
        std::size_t rank = 0;
        for (auto& rv : red) {
          std::sort(rv.begin(), rv.end());
          if (ech.insert(rv)) ++rank;
        }
        // nullity mod p >= exact nullity >= killed.size()
        settled = cols.size() - rank == killed.size();
      }
    } else if (killed.size() == cols.size()) {
      settled = true;
    }
    if (settled) {
      ++res.certified_blocks;
      for (std::uint64_t c : killed) res.space.insert(unit_vector(F, c));
      continue;
    }
    ++res.exact_blocks;
    for (const auto& k : exact_kernel(F, images)) {
      SparseVec v;
      for (const auto& [j, x] : k) v.emplace_back(cols[j], x);
      canonicalize(v);
      res.space.insert(v);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------

std::size_t Closure::dim() const {
  std::size_t d = 0;
  for (const auto& [k, s] : blocks) d += s.rank();
  return d;
}

Subspace Closure::merged() const {
  Subspace out;
  for (const auto& [k, s] : blocks) out.absorb(s);
  return out;
}

std::vector<SparseVec> Closure::basis() const {
  std::vector<SparseVec> out;
  for (const auto& [k, s] : blocks)
    for (auto& v : s.basis()) out.push_back(std::move(v));
  return out;
}

Closure submodule_closure(const GeneratorSet& g, const SparseVec& start) {
  const Field& F = *g.field;
  Closure cl;
  std::deque<SparseVec> queue;
  auto add = [&](const SparseVec& v) {
    if (v.empty()) return;
    auto key = weight_key(g, v.front().first);
    auto it = cl.blocks.find(key);
    if (it == cl.blocks.end()) it = cl.blocks.emplace(key, Subspace(F)).first;
    SparseVec r = it->second.insert(v);
    if (!r.empty()) queue.push_back(std::move(r));
  };
  // The t-closure of a vector contains each of its weight components.
  std::map<std::uint64_t, SparseVec> parts;
  for (const auto& [c, x] : start) parts[weight_key(g, c)].emplace_back(c, x);
  for (const auto& [k, v] : parts) add(v);
  while (!queue.empty()) {
    SparseVec v = std::move(queue.front());
    queue.pop_front();
    for (int i = 0; i < g.rank(); ++i) {
      add(qnil::apply(g.e[i], v));
      add(qnil::apply(g.f[i], v));
    }
  }
  return cl;
}

// ---------------------------------------------------------------------------

std::vector<Report> verify_defining_relations(const GeneratorSet& g, const VerifyOptions& opt) {
  const Field& F = *g.field;
  const int n = g.rank();
  const int l = F.l();
  const std::uint64_t dim = g.dim();
  std::vector<Report> out;

  auto run = [&](const std::string& claim, auto&& body) {
    auto t0 = Clock::now();
    Report r;
    r.claim = claim;
    r.pass = true;
    body(r);
    r.seconds = since(t0);
    out.push_back(std::move(r));
  };

  run("t_i t_i^-1 = 1", [&](Report& r) {
    for (int i = 0; i < n && r.pass; ++i) {
      long long bad = first_failure(dim, opt, [&](std::uint64_t c) {
        return g.t[i].col_end(c) - g.t[i].col_begin(c) == 1 && g.t_inv[i].col_end(c) - g.t_inv[i].col_begin(c) == 1 &&
               (g.t[i].value(g.t[i].col_begin(c)) * g.t_inv[i].value(g.t_inv[i].col_begin(c))).is_one();
      });
      if (bad >= 0) {
        r.pass = false;
        r.witness = "t" + std::to_string(i + 1) + " t" + std::to_string(i + 1) + "^-1 != 1 at column " +
                    basis_label(g, bad);
      }
    }
  });

  run("t_i t_j = t_j t_i", [&](Report& r) {
    for (int i = 0; i < n && r.pass; ++i)
      if (!g.t[i].is_diagonal() || !g.t_inv[i].is_diagonal()) {
        r.pass = false;
        r.witness = "t" + std::to_string(i + 1) + " is not diagonal";
      }
    r.data["note"] = "all t_i are diagonal in the tensor basis";
  });

  for (char kind : {'e', 'f'}) {
    const int sign = kind == 'e' ? 1 : -1;
    const auto& ops = kind == 'e' ? g.e : g.f;
    run(std::string("t_i ") + kind + "_j t_i^-1 = eps_i^{" + (sign > 0 ? "" : "-") + "a_ij} " + kind + "_j",
        [&](Report& r) {
          for (int i = 0; i < n && r.pass; ++i)
            for (int j = 0; j < n && r.pass; ++j) {
              const int want = F.mod(static_cast<long>(sign) * g.d_res(i + 1) * g.cartan.entry(i + 1, j + 1));
              const auto& op = ops[j];
              const auto& te = g.t_exp[i];
              long long bad = first_failure(dim, opt, [&](std::uint64_t c) {
                for (auto e = op.col_begin(c); e < op.col_end(c); ++e)
                  if (F.mod(static_cast<long>(te[op.row(e)]) - te[c]) != want) return false;
                return true;
              });
              if (bad >= 0) {
                r.pass = false;
                r.witness = "i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1) + " column " +
                            basis_label(g, bad);
              }
            }
        });
  }

  run("e_i f_j - f_j e_i = delta_ij {t_i}_{eps_i}", [&](Report& r) {
    for (int i = 0; i < n && r.pass; ++i)
      for (int j = 0; j < n && r.pass; ++j) {
        const int d = g.d_res(i + 1);
        auto residual = [&](std::uint64_t c) {
          SparseVec v = sub(qnil::apply(g.e[i], col(g.f[j], c)), qnil::apply(g.f[j], col(g.e[i], c)));
          if (i == j) v = sub(v, {{c, F.brace(g.t_exp[i][c], d)}});
          return v;
        };
        long long bad = first_failure(dim, opt, [&](std::uint64_t c) { return residual(c).empty(); });
        if (bad >= 0) {
          r.pass = false;
          r.witness = "i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1) + " column " + basis_label(g, bad) +
                      ": residual " + describe(g, residual(bad));
        }
      }
  });

  for (char kind : {'e', 'f'}) {
    const auto& ops = kind == 'e' ? g.e : g.f;
    run(std::string("q-Serre (") + kind + ")", [&](Report& r) {
      std::size_t pairs = 0;
      for (int i = 0; i < n && r.pass; ++i)
        for (int j = 0; j < n && r.pass; ++j) {
          if (i == j) continue;
          ++pairs;
          const int p = 1 - g.cartan.entry(i + 1, j + 1);
          std::vector<CycloNum> cf;
          for (int k = 0; k <= p; ++k) {
            CycloNum b = qbinom(F, p, k, g.cartan.sym(i + 1));
            cf.push_back(k % 2 ? -b : b);
          }
          // sum_k c_k X_i^k X_j X_i^{p-k} v, by Horner in X_i
          auto residual = [&](std::uint64_t c) {
            std::vector<SparseVec> u(p + 1);
            u[0] = unit_vector(F, c);
            for (int s = 1; s <= p; ++s) u[s] = qnil::apply(ops[i], u[s - 1]);
            SparseVec acc = scaled(qnil::apply(ops[j], u[0]), cf[p]);
            for (int k = p - 1; k >= 0; --k)
              acc = axpy(qnil::apply(ops[i], acc), cf[k], qnil::apply(ops[j], u[p - k]));
            return acc;
          };
          long long bad = first_failure(dim, opt, [&](std::uint64_t c) { return residual(c).empty(); });
          if (bad >= 0) {
            r.pass = false;
            r.witness = "i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1) + " column " +
                        basis_label(g, bad) + ": residual " + describe(g, residual(bad));
          }
        }
      r.data["pairs"] = pairs;
    });
  }
  (void)l;
  for (auto& r : out) r.data["columns"] = dim;
  return out;
}

Report verify_highest_weight(const GeneratorSet& g) {
  auto t0 = Clock::now();
  Report r;
  r.claim = "highest weight of v^0";
  r.pass = true;
  const Field& F = *g.field;
  const auto lam = g.spec.full_weight();
  nlohmann::json eig = nlohmann::json::array(), want = nlohmann::json::array();
  for (int i = 1; i <= g.rank(); ++i) {
    if (g.e[i - 1].col_end(0) != g.e[i - 1].col_begin(0)) {
      r.pass = false;
      r.witness = "e" + std::to_string(i) + " v^0 = " + describe(g, g.e[i - 1].column(0));
    }
    // eps_i^{lambda_i} = zeta^{d_i lambda_i}
    int expect = (g.cartan.sym(i) * Rational(lam[i - 1])).residue(F.l());
    eig.push_back(g.t_exp[i - 1][0]);
    want.push_back(expect);
    if (g.t_exp[i - 1][0] != expect && r.pass) {
      r.pass = false;
      r.witness = "t" + std::to_string(i) + " v^0 = zeta^" + std::to_string(g.t_exp[i - 1][0]) + " v^0, expected zeta^" +
                  std::to_string(expect);
    }
  }
  r.data["t_exponents"] = eig;
  r.data["expected"] = want;
  r.data["weight"] = weight_of(g, 0);
  r.seconds = since(t0);
  return r;
}

Report verify_nilpotency(const GeneratorSet& g, const Closure& L, const VerifyOptions& opt) {
  auto t0 = Clock::now();
  Report r;
  r.claim = "nilpotent of type 1";
  r.pass = true;
  const Field& F = *g.field;
  const int l = F.l();
  const auto basis = L.basis();
  auto fail = [&](std::string w) {
    if (r.pass) r.witness = std::move(w);
    r.pass = false;
  };
  for (int i = 0; i < g.rank(); ++i) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      SparseVec x = pow_apply(g.e[i], basis[b], l);
      if (!x.empty()) fail("e" + std::to_string(i + 1) + "^l != 0 on L: " + describe(g, x));
      SparseVec y = pow_apply(g.f[i], basis[b], l);
      if (!y.empty()) fail("f" + std::to_string(i + 1) + "^l != 0 on L: " + describe(g, y));
      for (const auto& [c, v] : basis[b])
        if (static_cast<long>(l) * g.t_exp[i][c] % l != 0) fail("t" + std::to_string(i + 1) + "^l != 1 on L");
    }
  }
  r.data["dim_L"] = basis.size();

  // e_i^l and f_i^l are central on the whole space.
  const std::uint64_t dim = g.dim();
  std::size_t nonzero_powers = 0;
  for (int i = 0; i < g.rank() && r.pass; ++i) {
    for (int which = 0; which < 2 && r.pass; ++which) {
      const SparseOp P = power(which == 0 ? g.e[i] : g.f[i], l);
      if (P.nnz() == 0) continue;
      ++nonzero_powers;
      const std::string name = std::string(which == 0 ? "e" : "f") + std::to_string(i + 1) + "^l";
      long long bad = first_failure(dim, opt, [&](std::uint64_t c) {
        const std::uint64_t key = weight_key(g, c);
        for (auto e = P.col_begin(c); e < P.col_end(c); ++e)
          if (weight_key(g, P.row(e)) != key) return false;
        for (int j = 0; j < g.rank(); ++j)
          for (const SparseOp* X : {&g.e[j], &g.f[j]})
            if (!sub(qnil::apply(P, col(*X, c)), qnil::apply(*X, col(P, c))).empty()) return false;
        return true;
      });
      if (bad >= 0) fail(name + " is not central: column " + basis_label(g, bad));
    }
  }
  r.data["nonzero_lth_powers_on_V"] = nonzero_powers;
  r.seconds = since(t0);
  return r;
}

std::map<std::vector<int>, std::size_t> character(const GeneratorSet& g, const Closure& L) {
  std::map<std::vector<int>, std::size_t> out;
  for (const auto& [key, s] : L.blocks) {
    if (s.rank() == 0) continue;
    auto b = s.basis();
    out[weight_of(g, b.front().front().first)] += s.rank();
  }
  return out;
}

GradedCharacter graded_character(const GeneratorSet& g, std::size_t dim_L) {
  const Field& F = *g.field;
  const int n = g.rank();
  std::map<std::vector<long>, Subspace> blocks;
  std::deque<std::pair<SparseVec, std::vector<long>>> queue;
  GradedCharacter out;
  auto add = [&](const SparseVec& v, std::vector<long> w) {
    if (v.empty()) return;
    auto it = blocks.find(w);
    if (it == blocks.end()) it = blocks.emplace(w, Subspace(F)).first;
    SparseVec r = it->second.insert(v);
    if (r.empty()) return;
    ++out.total;
    queue.emplace_back(std::move(r), std::move(w));
  };
  std::vector<long> lam = g.spec.full_weight();
  add(unit_vector(F, 0), lam);
  // a non-direct grading would grow without bound; stop once it exceeds dim L
  while (!queue.empty() && out.total <= dim_L) {
    auto [v, w] = std::move(queue.front());
    queue.pop_front();
    for (int j = 1; j <= n; ++j) {
      std::vector<long> up = w, down = w;
      for (int i = 1; i <= n; ++i) {
        up[i - 1] += g.cartan.entry(i, j);
        down[i - 1] -= g.cartan.entry(i, j);
      }
      add(qnil::apply(g.e[j - 1], v), up);
      add(qnil::apply(g.f[j - 1], v), down);
    }
  }
  for (const auto& [w, s] : blocks) out.mult[w] = s.rank();
  out.direct = queue.empty() && out.total == dim_L;
  return out;
}

Report irreducibility_sampling(const GeneratorSet& g, const Closure& L, int samples, std::uint64_t seed) {
  auto t0 = Clock::now();
  Report r;
  r.claim = "random vectors of L regenerate L";
  r.pass = true;
  const Field& F = *g.field;
  const auto basis = L.basis();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  nlohmann::json dims = nlohmann::json::array();
  for (int s = 0; s < samples; ++s) {
    SparseVec v;
    while (v.empty()) {
      for (const auto& b : basis) {
        int a = coef(rng);
        if (a != 0) v = axpy(v, CycloNum(F, Rational(a)), b);
      }
    }
    std::size_t d = submodule_closure(g, v).dim();
    dims.push_back(d);
    if (d != basis.size() && r.pass) {
      r.pass = false;
      r.witness = "sample " + std::to_string(s) + " generates a subspace of dimension " + std::to_string(d) + " < " +
                  std::to_string(basis.size());
    }
  }
  r.data["dim_L"] = basis.size();
  r.data["sample_dims"] = dims;
  r.data["seed"] = seed;
  r.seconds = since(t0);
  return r;
}

Report certify_irreducible(const GeneratorSet& g, const VerifyOptions& opt) {
  for (long x : g.spec.lambda)
    if (x < 0 || x >= g.field->l())
      throw PreconditionError("lambda_i = " + std::to_string(x) + " is outside Z_l = {0, ..., " +
                              std::to_string(g.field->l() - 1) + "}");
  auto t0 = Clock::now();
  Report r;
  r.claim = "irreducible nilpotent highest-weight module";
  Report hw = verify_highest_weight(g);
  PrimitiveResult P = primitive_space(g);
  Closure L = submodule_closure(g);
  Report nil = verify_nilpotency(g, L, opt);
  r.pass = hw.pass && P.dim() == 1 && nil.pass;
  if (!hw.pass)
    r.witness = hw.witness;
  else if (P.dim() != 1)
    r.witness = "dim P = " + std::to_string(P.dim());
  else if (!nil.pass)
    r.witness = nil.witness;
  std::string hwtxt = "(";
  auto lam = g.spec.full_weight();
  for (std::size_t i = 0; i < lam.size(); ++i) hwtxt += (i ? "," : "") + std::to_string(lam[i]);
  hwtxt += ")";
  r.data["dim_P"] = P.dim();
  r.data["dim_L"] = L.dim();
  r.data["dim_V"] = g.dim();
  r.data["highest_weight"] = hwtxt;
  r.data["primitive"] = {{"blocks", P.blocks}, {"certified_mod_p", P.certified_blocks}, {"exact", P.exact_blocks},
                         {"prime", P.prime}};
  r.data["highest_weight_check"] = to_json(hw);
  r.data["nilpotency_check"] = to_json(nil);
  if (r.pass) r.data["identification"] = "L_{k,n}(lambda) = L^nil" + hwtxt;
  r.seconds = since(t0);
  return r;
}

}  // namespace qnil
