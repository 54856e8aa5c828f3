#pragma once

// Generators and brute-force oracles shared by the test binaries. Oracles
// work from coefficient vectors and definitions, not library shortcuts.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ordlab/canonical.hpp"
#include "ordlab/colouring.hpp"
#include "ordlab/ordinal.hpp"
#include "ordlab/tree.hpp"

namespace oracle {

using ordlab::Ordinal;
using ordlab::Truncation;

// coeffs[e] is the coefficient of w^e.
inline std::vector<std::uint32_t> coeffs(const Ordinal& a, std::uint32_t width) {
  std::vector<std::uint32_t> v(width, 0);
  for (const auto& t : a.terms())
    if (t.exponent < width) v[t.exponent] = t.coefficient;
  return v;
}

inline Ordinal from_coeffs(const std::vector<std::uint32_t>& v) {
  std::vector<ordlab::Term> terms;
  for (std::size_t e = v.size(); e-- > 0;)
    if (v[e]) terms.push_back({static_cast<std::uint32_t>(e), v[e]});
  return Ordinal::from_terms(terms);
}

inline std::uint32_t rank(const std::vector<std::uint32_t>& v) {
  for (std::size_t e = 0; e < v.size(); ++e)
    if (v[e]) return static_cast<std::uint32_t>(e);
  return 0;
}

inline int compare(const std::vector<std::uint32_t>& a,
                   const std::vector<std::uint32_t>& b) {
  for (std::size_t e = a.size(); e-- > 0;)
    if (a[e] != b[e]) return a[e] < b[e] ? -1 : 1;
  return 0;
}

// beta <| alpha: alpha = beta + w^g with g > rank(beta), g >= 1.
inline bool below(const std::vector<std::uint32_t>& beta,
                  const std::vector<std::uint32_t>& alpha) {
  const std::size_t w = beta.size();
  const bool beta_zero = std::all_of(beta.begin(), beta.end(), [](auto c) { return c == 0; });
  for (std::size_t g = 1; g < w; ++g) {
    if (!beta_zero && g <= rank(beta)) continue;
    std::vector<std::uint32_t> sum = beta;
    for (std::size_t e = 0; e < g; ++e) sum[e] = 0;
    sum[g] += 1;
    if (sum == alpha) return true;
  }
  return false;
}

// Family of the pair under the four coefficient comparisons; 0 for none.
inline int family(const Ordinal& x, const Ordinal& y, std::uint32_t width) {
  auto a = coeffs(x, width), b = coeffs(y, width);
  if (compare(a, b) == 0) return 0;
  const bool az = x.is_zero(), bz = y.is_zero();
  std::uint32_t ra = az ? 0 : rank(a), rb = bz ? 0 : rank(b);
  if (ra == rb) return 0;
  const auto& lo = ra < rb ? a : b;
  const auto& hi = ra < rb ? b : a;
  const std::uint32_t gap = std::max(ra, rb) - std::min(ra, rb);
  const std::uint32_t n = std::max(ra, rb);
  const bool lo_less = compare(lo, hi) < 0;
  const bool tree = below(lo, hi);
  const std::uint32_t maxhi = *std::max_element(hi.begin(), hi.end());
  auto at = [&](std::int64_t e) -> std::uint64_t { return e < 0 ? 0 : lo[static_cast<std::size_t>(e)]; };
  switch (gap) {
    case 1: return tree ? 1 : 0;
    case 2: return !lo_less ? 2 : 0;
    case 3: return lo_less && !tree && maxhi < at(n - 1) ? 3 : 0;
    case 4: return lo_less && !tree && maxhi > at(n - 1) + at(std::int64_t(n) - 2) ? 4 : 0;
    default: return 0;
  }
}

inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t key(const Ordinal& a) {
  std::uint64_t h = 0x51ed27;
  for (const auto& t : a.terms()) h = mix(h ^ (std::uint64_t{t.exponent} << 32 | t.coefficient));
  return h;
}

// Colour-1 with probability density/256, fixed by the seed.
inline ordlab::Colouring random_colouring(std::uint64_t seed, unsigned density) {
  return ordlab::Colouring(
      "random-" + std::to_string(seed) + "-" + std::to_string(density),
      ordlab::Provenance::kSynthesized,
      [seed, density](const Ordinal& lo, const Ordinal& hi) {
        return (mix(seed ^ key(lo) ^ mix(key(hi))) & 0xff) < density ? 1 : 0;
      });
}

inline Ordinal random_ordinal(std::mt19937_64& rng, const Truncation& t) {
  std::uniform_int_distribution<std::uint64_t> pick(0, t.size() - 1);
  return t.at(static_cast<std::size_t>(pick(rng)));
}

// Tables obeying the three scarcity conditions: each higher rank has at
// most one descolor 1, and domcolor 1s form a partial matching.
inline ordlab::CanonicalTables scarce_tables(std::mt19937_64& rng, std::uint32_t k) {
  ordlab::CanonicalTables t(k);
  std::bernoulli_distribution coin(0.5);
  for (std::uint32_t j = 1; j < k; ++j)
    if (coin(rng)) t.set_descolor(j, std::uniform_int_distribution<std::uint32_t>(0, j - 1)(rng), 1);
  std::vector<std::uint32_t> cols(k);
  for (std::uint32_t i = 0; i < k; ++i) cols[i] = i;
  std::shuffle(cols.begin(), cols.end(), rng);
  for (std::uint32_t j = 0; j < k; ++j)
    if (coin(rng)) t.set_domcolor(j, cols[j], 1);
  return t;
}

// Scarcity by direct counting.
inline bool scarce(const ordlab::CanonicalTables& t) {
  const std::uint32_t k = t.k();
  for (std::uint32_t j = 0; j < k; ++j) {
    int des = 0, row = 0, col = 0;
    for (std::uint32_t l = 0; l < k; ++l) {
      if (l < j) des += t.descolor(j, l);
      row += t.domcolor(j, l);
      col += t.domcolor(l, j);
    }
    if (des > 1 || row > 1 || col > 1) return false;
  }
  return true;
}

}  // namespace oracle
