#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <vector>

#include "qnil/module_builder.hpp"

namespace qnil::testing {

// Fixed default seed; QNIL_SEED overrides it for exploratory runs.
inline std::uint64_t seed(std::uint64_t salt = 0) {
  std::uint64_t s = 0x5eed'2024;
  if (const char* env = std::getenv("QNIL_SEED")) s = std::strtoull(env, nullptr, 10);
  return s ^ (salt * 0x9e3779b97f4a7c15ULL);
}

inline ModuleSpec spec(Family f, int n, int k, std::vector<long> lambda, int l) {
  ModuleSpec s;
  s.family = f;
  s.n = n;
  s.k = k;
  s.lambda = std::move(lambda);
  s.l = l;
  return s;
}

inline bool same_generators(const GeneratorSet& a, const GeneratorSet& b) {
  if (a.rank() != b.rank()) return false;
  for (int i = 0; i < a.rank(); ++i)
    if (!(a.e[i] == b.e[i]) || !(a.f[i] == b.f[i]) || !(a.t[i] == b.t[i])) return false;
  return true;
}

}  // namespace qnil::testing
