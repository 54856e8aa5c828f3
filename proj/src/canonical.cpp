#include "ordlab/canonical.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <random>
#include <sstream>

#include "ordlab/adjacency.hpp"
#include "ordlab/tree.hpp"

namespace ordlab {

namespace {

bool large_rec(const std::vector<char>& mask, std::size_t offset,
               std::uint32_t levels, std::size_t fibre, const LargenessSpec& s) {
  if (levels == 0) return mask[offset] != 0;
  const std::size_t sub = fibre / s.side;
  std::uint32_t missing = 0;
  for (std::uint32_t v = 0; v < s.side; ++v) {
    if (!large_rec(mask, offset + v * sub, levels - 1, sub, s)) {
      if (++missing > s.deficiency) return false;
    }
  }
  return true;
}

std::size_t grid_size(const LargenessSpec& s) {
  std::size_t n = 1;
  for (std::uint32_t i = 0; i < s.levels; ++i) n *= s.side;
  return n;
}

void check_spec(const LargenessSpec& s) {
  if (s.side == 0 || s.deficiency >= s.side)
    throw Error(ErrorCode::kDomain, "largeness needs deficiency < side");
}

std::string key(std::uint32_t j, std::uint32_t l) {
  return "(" + std::to_string(j) + "," + std::to_string(l) + ")";
}

// Which side of the slice is large for alpha: 1 = neighbours, 0 = the rest,
// nullopt when neither or both are.
struct SideReading {
  bool neighbours_large = false;
  bool others_large = false;
  std::size_t neighbours = 0;
  std::optional<int> side() const {
    if (neighbours_large == others_large) return std::nullopt;
    return neighbours_large ? 1 : 0;
  }
};

SideReading read_side(const Colouring& col, const Ordinal& alpha,
                      const SliceGrid& grid, std::uint32_t deficiency) {
  std::vector<char> in(grid.points.size()), out(grid.points.size());
  SideReading r;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const Ordinal& p = grid.points[i];
    const bool adj = p != alpha && col.colour(alpha, p) == 1;
    in[i] = adj;
    out[i] = !adj;
    r.neighbours += adj;
  }
  const LargenessSpec spec{grid.levels, grid.side,
                           std::min(deficiency, grid.side - 1)};
  r.neighbours_large = is_large_mask(in, spec);
  r.others_large = is_large_mask(out, spec);
  return r;
}

void require_shape(const Truncation& t, std::uint32_t k) {
  if (k == 0 || t.max_exp() + 1 < k)
    throw Error(ErrorCode::kDomain,
                "truncation with E=" + std::to_string(t.max_exp()) +
                    " cannot host w^" + std::to_string(k));
}

}  // namespace

bool is_large_mask(const std::vector<char>& mask, const LargenessSpec& spec) {
  check_spec(spec);
  const std::size_t n = grid_size(spec);
  if (mask.size() != n)
    throw Error(ErrorCode::kDomain, "largeness mask has wrong size");
  return large_rec(mask, 0, spec.levels, n, spec);
}

bool is_large(const std::vector<IndexVector>& set, const LargenessSpec& spec) {
  check_spec(spec);
  std::vector<char> mask(grid_size(spec), 0);
  for (const IndexVector& v : set) {
    if (v.size() != spec.levels)
      throw Error(ErrorCode::kDomain, "index vector has dimension " +
                                          std::to_string(v.size()) +
                                          ", expected " +
                                          std::to_string(spec.levels));
    std::size_t idx = 0;
    for (std::uint32_t c : v) {
      if (c >= spec.side)
        throw Error(ErrorCode::kDomain, "index outside the grid side");
      idx = idx * spec.side + c;
    }
    mask[idx] = 1;
  }
  return large_rec(mask, 0, spec.levels, mask.size(), spec);
}

SliceGrid slice_grid(const Ordinal& theta, std::uint32_t l, const Truncation& t) {
  SliceGrid grid;
  const std::uint32_t c = theta.cb_rank();
  if (l > c || theta.is_zero()) return grid;
  if (l == c) {
    if (t.contains(theta)) grid.points.push_back(theta);
    return grid;
  }
  if (c - 1 > t.max_exp()) return grid;
  std::vector<Term> base = theta.terms();
  if (--base.back().coefficient == 0) base.pop_back();
  if (!t.contains(Ordinal::from_terms(base))) return grid;

  grid.levels = c - l;
  grid.side = t.max_coeff();
  std::vector<std::uint32_t> digits(grid.levels, 1);  // digits[0] at w^(c-1)
  for (;;) {
    std::vector<Term> terms = base;
    for (std::uint32_t i = 0; i < grid.levels; ++i)
      terms.push_back(Term{c - 1 - i, digits[i]});
    grid.points.push_back(Ordinal::from_terms(std::move(terms)));
    std::size_t pos = grid.levels;
    for (;;) {
      if (pos == 0) return grid;
      --pos;
      if (digits[pos] < grid.side) {
        ++digits[pos];
        break;
      }
      digits[pos] = 1;
    }
  }
}

std::uint32_t default_deficiency(const Truncation& t) {
  return (t.max_coeff() + 3) / 4;
}

CanonicalTables::CanonicalTables(std::uint32_t k) : k_(k) {
  for (std::uint32_t j = 0; j < k; ++j) {
    for (std::uint32_t l = 0; l < k; ++l) {
      if (j > l) descolor_[{j, l}] = 0;
      domcolor_[{j, l}] = 0;
    }
  }
}

int CanonicalTables::descolor(std::uint32_t j, std::uint32_t l) const {
  auto it = descolor_.find({j, l});
  if (it == descolor_.end())
    throw Error(ErrorCode::kDomain, "descolor" + key(j, l) + " is undefined");
  return it->second;
}

void CanonicalTables::set_descolor(std::uint32_t j, std::uint32_t l, int v) {
  if (!(k_ > j && j > l))
    throw Error(ErrorCode::kDomain, "descolor" + key(j, l) + " is undefined");
  descolor_[{j, l}] = v ? 1 : 0;
}

int CanonicalTables::domcolor(std::uint32_t j, std::uint32_t l) const {
  auto it = domcolor_.find({j, l});
  if (it == domcolor_.end())
    throw Error(ErrorCode::kDomain, "domcolor" + key(j, l) + " is undefined");
  return it->second;
}

void CanonicalTables::set_domcolor(std::uint32_t j, std::uint32_t l, int v) {
  if (j >= k_ || l >= k_)
    throw Error(ErrorCode::kDomain, "domcolor" + key(j, l) + " is undefined");
  domcolor_[{j, l}] = v ? 1 : 0;
}

std::string serialize_tables(const CanonicalTables& tables) {
  std::ostringstream os;
  os << "k " << tables.k() << '\n';
  for (const auto& [jl, v] : tables.descolor_map())
    os << "descolor " << jl.first << ' ' << jl.second << ' ' << v << '\n';
  for (const auto& [jl, v] : tables.domcolor_map())
    os << "domcolor " << jl.first << ' ' << jl.second << ' ' << v << '\n';
  return os.str();
}

CanonicalTables parse_tables(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<CanonicalTables> tables;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kSyntax,
                "tables line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "k") {
      std::uint32_t k = 0;
      if (tables || !(ls >> k) || k == 0) fail("bad or repeated k line");
      tables.emplace(k);
      continue;
    }
    if (!tables) fail("k line must come first");
    std::uint32_t j = 0, l = 0;
    int v = 0;
    std::string extra;
    if (!(ls >> j >> l >> v) || (v != 0 && v != 1) || (ls >> extra))
      fail("expected '<table> j l v' with v in {0,1}");
    try {
      if (word == "descolor")
        tables->set_descolor(j, l, v);
      else if (word == "domcolor")
        tables->set_domcolor(j, l, v);
      else
        fail("unknown table '" + word + "'");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kSyntax) throw;
      fail(e.what());
    }
  }
  if (!tables) throw Error(ErrorCode::kSyntax, "tables document has no k line");
  return *tables;
}

AuditReport audit_canonical(const Colouring& col, const Truncation& t,
                            std::uint32_t k, std::uint32_t deficiency) {
  require_shape(t, k);
  AuditReport report;
  report.k = k;
  report.deficiency = deficiency;
  const Ordinal root = Ordinal::power(k);
  const std::uint64_t core_sum = std::max<std::uint32_t>(1, deficiency);

  std::vector<Ordinal> core;
  std::vector<Ordinal> thetas;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Ordinal a = t.at(i);
    if (!(a < root)) continue;
    if (!a.is_zero() && a.coefficient_sum() <= core_sum) core.push_back(a);
    if (a.cb_rank() >= 1) thetas.push_back(std::move(a));
  }
  thetas.push_back(root);
  report.core_size = core.size();

  // (iii): side per (rank of alpha, l) at the root, with the first alpha
  // that fixed it.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<int, Ordinal>>
      root_side;

  for (const Ordinal& theta : thetas) {
    const bool is_root = theta == root;
    for (std::uint32_t l = 0; l < theta.cb_rank(); ++l) {
      const SliceGrid grid = slice_grid(theta, l, t);
      if (grid.points.empty()) continue;
      for (const Ordinal& alpha : core) {
        ++report.triples_checked;
        const SideReading r = read_side(col, alpha, grid, deficiency);
        if (!r.neighbours_large && !r.others_large) {
          report.violations.push_back(
              {CanonicalCondition::kLargeSide, theta, alpha, l,
               "neither side large (" + std::to_string(r.neighbours) + " of " +
                   std::to_string(grid.points.size()) + " adjacent)"});
          continue;
        }
        if (alpha == theta && r.neighbours != 0 &&
            r.neighbours != grid.points.size()) {
          report.violations.push_back(
              {CanonicalCondition::kOwnSubtree, theta, alpha, l,
               std::to_string(r.neighbours) + " of " +
                   std::to_string(grid.points.size()) +
                   " own-subtree points adjacent"});
        }
        if (is_root) {
          const auto side = r.side();
          if (!side) continue;
          auto [it, fresh] = root_side.try_emplace({alpha.cb_rank(), l},
                                                   *side, alpha);
          if (!fresh && it->second.first != *side) {
            report.violations.push_back(
                {CanonicalCondition::kRankOnly, theta, alpha, l,
                 "large side differs from " + format_ordinal(it->second.second) +
                     " of the same rank"});
          }
        }
      }
    }
  }
  return report;
}

CanonicalTables extract_tables(const Colouring& col, const Truncation& t,
                               std::uint32_t k, std::uint32_t deficiency) {
  require_shape(t, k);
  CanonicalTables tables(k);
  const Ordinal root = Ordinal::power(k);
  auto decide = [&](const Ordinal& alpha, const SliceGrid& grid,
                    const std::string& entry) {
    if (grid.points.empty())
      throw Error(ErrorCode::kDomain, entry + ": empty slice in the truncation");
    const auto side = read_side(col, alpha, grid, deficiency).side();
    if (!side)
      throw Error(ErrorCode::kDomain,
                  entry + " is ambiguous at deficiency " +
                      std::to_string(deficiency));
    return *side;
  };
  for (std::uint32_t j = 0; j < k; ++j) {
    const Ordinal alpha = Ordinal::power(j);
    for (std::uint32_t l = 0; l < j; ++l)
      tables.set_descolor(j, l, decide(alpha, slice_grid(alpha, l, t),
                                       "descolor" + key(j, l)));
    for (std::uint32_t l = 0; l < k; ++l)
      tables.set_domcolor(j, l, decide(alpha, slice_grid(root, l, t),
                                       "domcolor" + key(j, l)));
  }
  return tables;
}

Colouring synthesize_canonical(const CanonicalTables& tables,
                               std::uint32_t threshold) {
  const std::string text = serialize_tables(tables);
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a64(text)));
  auto shared = std::make_shared<const CanonicalTables>(tables);
  return Colouring(
      "synth-" + std::string(hash) + "-t" + std::to_string(threshold),
      Provenance::kSynthesized,
      [shared, threshold](const Ordinal& lo, const Ordinal& hi) {
        const std::uint32_t k = shared->k();
        const std::uint32_t rl = lo.cb_rank(), rh = hi.cb_rank();
        if (lo.leading_exponent() >= k || hi.leading_exponent() >= k) return 0;
        if (tree_le(lo, hi)) return shared->descolor(rh, rl);
        const int dom = shared->domcolor(rl, rh);
        const bool dominant =
            hi.max_coefficient() >= lo.coefficient_sum() + threshold;
        return dominant ? dom : 1 - dom;
      });
}

std::vector<ScarcityViolation> scarcity_check(const CanonicalTables& tables) {
  std::vector<ScarcityViolation> out;
  const std::uint32_t k = tables.k();
  for (std::uint32_t high = 0; high < k; ++high) {
    std::vector<std::uint32_t> ones;
    for (std::uint32_t low = 0; low < high; ++low)
      if (tables.descolor(high, low)) ones.push_back(low);
    if (ones.size() > 1)
      out.push_back({ScarcityCondition::kDescolorPerHigh, high, ones[0], ones[1]});
  }
  for (std::uint32_t j = 0; j < k; ++j) {
    std::vector<std::uint32_t> ones;
    for (std::uint32_t l = 0; l < k; ++l)
      if (tables.domcolor(j, l)) ones.push_back(l);
    if (ones.size() > 1)
      out.push_back({ScarcityCondition::kDomcolorPerRow, j, ones[0], ones[1]});
  }
  for (std::uint32_t l = 0; l < k; ++l) {
    std::vector<std::uint32_t> ones;
    for (std::uint32_t j = 0; j < k; ++j)
      if (tables.domcolor(j, l)) ones.push_back(j);
    if (ones.size() > 1)
      out.push_back({ScarcityCondition::kDomcolorPerColumn, l, ones[0], ones[1]});
  }
  return out;
}

namespace {

void require_disjoint_ascending(const std::vector<Ordinal>& a,
                                const std::vector<Ordinal>& b) {
  auto ascending = [](const std::vector<Ordinal>& v) {
    return std::adjacent_find(v.begin(), v.end(), [](const auto& x, const auto& y) {
             return !(x < y);
           }) == v.end();
  };
  if (!ascending(a) || !ascending(b))
    throw Error(ErrorCode::kDomain, "sets must be strictly ascending");
  for (const Ordinal& x : a)
    if (std::binary_search(b.begin(), b.end(), x))
      throw Error(ErrorCode::kDomain, "sets must be disjoint");
}

std::vector<Ordinal> survivors_of(const Colouring& col,
                                  const std::vector<Ordinal>& x,
                                  const std::vector<Ordinal>& b) {
  std::vector<Ordinal> out;
  for (const Ordinal& y : b) {
    const bool covered = std::any_of(x.begin(), x.end(), [&](const Ordinal& a) {
      return col.colour(a, y) == 1;
    });
    if (!covered) out.push_back(y);
  }
  return out;
}

}  // namespace

OppressOutcome oppress_check(const Colouring& col, const std::vector<Ordinal>& a,
                             const std::vector<Ordinal>& b,
                             const OppressParams& params) {
  require_disjoint_ascending(a, b);
  OppressOutcome out;
  const std::size_t s = std::max<std::size_t>(1, params.min_suffix);
  if (a.size() < s) return out;

  // Neighbourhoods only grow with the suffix, so scan from the shortest
  // suffix outwards and remember the longest one that still fails.
  std::vector<char> covered(b.size(), 0);
  std::size_t uncovered = b.size();
  std::optional<std::size_t> longest_fail;
  for (std::size_t start = a.size(); start-- > 0;) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!covered[j] && col.colour(a[start], b[j]) == 1) {
        covered[j] = 1;
        --uncovered;
      }
    }
    if (a.size() - start >= s && uncovered > params.max_missed)
      longest_fail = start;
  }
  if (longest_fail) {
    out.ok = false;
    out.subset.assign(a.begin() + static_cast<std::ptrdiff_t>(*longest_fail),
                      a.end());
    out.survivors = survivors_of(col, out.subset, b);
    out.detail = "suffix of size " + std::to_string(out.subset.size()) +
                 " misses " + std::to_string(out.survivors.size()) +
                 " elements of B";
    return out;
  }

  std::mt19937_64 rng(params.seed);
  for (std::size_t trial = 0; trial < params.samples; ++trial) {
    // Random cofinal subset: always keeps the last element of A.
    std::vector<Ordinal> x;
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
      if (rng() & 1u) x.push_back(a[i]);
    x.push_back(a.back());
    if (x.size() < s) continue;
    auto surv = survivors_of(col, x, b);
    if (surv.size() > params.max_missed) {
      out.ok = false;
      out.subset = std::move(x);
      out.survivors = std::move(surv);
      out.detail = "sampled cofinal subset misses " +
                   std::to_string(out.survivors.size()) + " elements of B";
      return out;
    }
  }
  return out;
}

OppressOutcome harass_check(const Colouring& col, const std::vector<Ordinal>& a,
                            const std::vector<Ordinal>& b,
                            const OppressParams& params, std::size_t g) {
  OppressOutcome out = oppress_check(col, a, b, params);
  if (!out.ok) return out;
  for (const Ordinal& x : a) {
    const auto deg = static_cast<std::size_t>(
        std::count_if(b.begin(), b.end(),
                      [&](const Ordinal& y) { return col.colour(x, y) == 1; }));
    if (deg > g) {
      out.ok = false;
      out.heavy = x;
      out.detail = format_ordinal(x) + " has " + std::to_string(deg) +
                   " neighbours in B, bound is " + std::to_string(g);
      return out;
    }
  }
  return out;
}

Refinement harassment_refine(const Colouring& col, const std::vector<Ordinal>& a,
                             const std::vector<Ordinal>& b,
                             const OppressParams& params, std::size_t g) {
  require_disjoint_ascending(a, b);
  Refinement r;
  const std::size_t s = std::max<std::size_t>(1, params.min_suffix);
  if (a.size() < s) {
    r.detail = "A has fewer than s elements";
    return r;
  }
  // adj[y][x]: whether b[y] is adjacent to a[x].
  std::vector<std::vector<char>> adj(b.size(), std::vector<char>(a.size()));
  for (std::size_t y = 0; y < b.size(); ++y)
    for (std::size_t x = 0; x < a.size(); ++x) adj[y][x] = col.colour(a[x], b[y]) == 1;

  auto dropped_by = [&](const std::vector<std::size_t>& pick) {
    std::size_t dropped = 0;
    for (std::size_t y = 0; y < b.size(); ++y) {
      std::size_t missed = 0;
      for (std::size_t x : pick) missed += !adj[y][x];
      dropped += missed > g;
    }
    return dropped;
  };

  // s-subsets of A, latest elements first, so the suffix is tried before
  // anything else and wins ties.
  constexpr std::size_t kBudget = 200000;
  std::vector<std::size_t> pick(s), best;
  std::size_t best_dropped = b.size() + 1, visited = 0;
  auto search = [&](auto&& self, std::size_t depth, std::size_t hi) -> bool {
    if (depth == s) {
      ++visited;
      const std::size_t d = dropped_by(pick);
      if (d < best_dropped) {
        best_dropped = d;
        best = pick;
      }
      return d == 0 || visited >= kBudget;
    }
    for (std::size_t x = hi; x-- > s - depth - 1;) {
      pick[depth] = x;
      if (self(self, depth + 1, x)) return true;
    }
    return false;
  };
  search(search, 0, a.size());
  std::sort(best.begin(), best.end());

  for (std::size_t x : best) r.a0.push_back(a[x]);
  std::vector<Ordinal> dropped;
  for (std::size_t y = 0; y < b.size(); ++y) {
    std::size_t missed = 0;
    for (std::size_t x : best) missed += !adj[y][x];
    (missed <= g ? r.b0 : dropped).push_back(b[y]);
  }
  if (dropped.size() > params.max_missed) {
    r.blocker = dropped[params.max_missed];
    r.detail = std::to_string(dropped.size()) +
               " elements of B see too little of every A0 tried, at most " +
               std::to_string(params.max_missed) + " may be dropped";
    r.b0.clear();
    r.a0.clear();
    return r;
  }
  r.ok = true;
  return r;
}

}  // namespace ordlab
