#pragma once

// Finite surrogates for the largeness filters, canonical-colouring audits,
// descolor/domcolor tables, scarcity, and the oppress/harass relations.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordlab/colouring.hpp"

namespace ordlab {

/// A subset of [0, side)^levels is large when at most `deficiency` values
/// of the first coordinate have a fibre that is not (levels-1)-large. At
/// level 0 the single point must be present.
struct LargenessSpec {
  std::uint32_t levels = 1;
  std::uint32_t side = 1;
  std::uint32_t deficiency = 0;
};

using IndexVector = std::vector<std::uint32_t>;

/// Throws Error(kDomain) if a vector has the wrong dimension or a
/// coordinate outside the side, or if deficiency >= side.
bool is_large(const std::vector<IndexVector>& set, const LargenessSpec& spec);

/// Dense form: mask has side^levels entries, first coordinate most
/// significant.
bool is_large_mask(const std::vector<char>& mask, const LargenessSpec& spec);

/// The rank-l part of theta's subtree as a full grid: theta's base followed
/// by coefficients in [1, C] at exponents CB(theta)-1 .. l. Points are
/// ascending, which is row-major order with the highest exponent first.
struct SliceGrid {
  std::vector<Ordinal> points;
  std::uint32_t levels = 0;
  std::uint32_t side = 0;
};

/// theta may be w^k with k = E+1 (the root of the truncation). Returns an
/// empty grid when the slice does not fit inside t.
SliceGrid slice_grid(const Ordinal& theta, std::uint32_t l, const Truncation& t);

/// Default deficiency: ceil(C / 4).
std::uint32_t default_deficiency(const Truncation& t);

class CanonicalTables {
 public:
  CanonicalTables() = default;
  /// All entries 0.
  explicit CanonicalTables(std::uint32_t k);

  std::uint32_t k() const noexcept { return k_; }

  /// Defined for k > j > l.
  int descolor(std::uint32_t j, std::uint32_t l) const;
  void set_descolor(std::uint32_t j, std::uint32_t l, int v);
  /// Defined for j, l < k.
  int domcolor(std::uint32_t j, std::uint32_t l) const;
  void set_domcolor(std::uint32_t j, std::uint32_t l, int v);

  const std::map<std::pair<std::uint32_t, std::uint32_t>, int>& descolor_map()
      const noexcept {
    return descolor_;
  }
  const std::map<std::pair<std::uint32_t, std::uint32_t>, int>& domcolor_map()
      const noexcept {
    return domcolor_;
  }

  bool operator==(const CanonicalTables&) const = default;

 private:
  std::uint32_t k_ = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> descolor_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> domcolor_;
};

/// "k <k>" then sorted "descolor j l v" and "domcolor j l v" lines.
std::string serialize_tables(const CanonicalTables& tables);
CanonicalTables parse_tables(std::string_view text);

enum class CanonicalCondition { kLargeSide = 1, kOwnSubtree = 2, kRankOnly = 3 };

struct AuditViolation {
  CanonicalCondition condition;
  Ordinal theta;  // w^k for the root
  Ordinal alpha;
  std::uint32_t l = 0;
  std::string detail;
};

struct AuditReport {
  std::uint32_t k = 0;
  std::uint32_t deficiency = 0;
  std::size_t triples_checked = 0;
  std::size_t core_size = 0;
  std::vector<AuditViolation> violations;
};

/// Checks the three canonicity conditions for every subtree slice theta
/// (members below w^k of positive rank, and the root w^k), every level l
/// below CB(theta), and every alpha in the core: nonzero members below w^k
/// with coefficient sum <= max(1, d). Requires E >= k-1.
AuditReport audit_canonical(const Colouring& col, const Truncation& t,
                            std::uint32_t k, std::uint32_t deficiency);

/// Reads descolor(j, l) from w^j against its own rank-l slice and
/// domcolor(j, l) from w^j against the root's rank-l slice. Throws
/// Error(kDomain) naming the entry when neither side is large.
CanonicalTables extract_tables(const Colouring& col, const Truncation& t,
                               std::uint32_t k, std::uint32_t deficiency);

/// For a < b: tree-related pairs take descolor(CB b, CB a); otherwise
/// domcolor(CB a, CB b) when max coeff(b) >= coeff sum(a) + threshold, and
/// its complement below that. Pairs reaching rank >= k are colour 0.
Colouring synthesize_canonical(const CanonicalTables& tables,
                               std::uint32_t threshold);

enum class ScarcityCondition {
  kDescolorPerHigh = 1,  // fixed higher rank: at most one lower rank with 1
  kDomcolorPerRow = 2,   // fixed j: at most one l
  kDomcolorPerColumn = 3 // fixed l: at most one j
};

struct ScarcityViolation {
  ScarcityCondition condition;
  std::uint32_t fixed = 0;
  std::uint32_t first = 0;
  std::uint32_t second = 0;
};

std::vector<ScarcityViolation> scarcity_check(const CanonicalTables& tables);

struct OppressParams {
  std::size_t min_suffix = 1;   // s
  std::size_t max_missed = 0;   // f
  std::size_t samples = 0;      // extra random cofinal subsets
  std::uint64_t seed = 0;
};

struct OppressOutcome {
  bool ok = true;
  // Populated on failure.
  std::vector<Ordinal> subset;     // the failing X (a suffix unless sampled)
  std::vector<Ordinal> survivors;  // B \ N(X)
  std::optional<Ordinal> heavy;    // harass: element with too many B-neighbours
  std::string detail;
};

/// A oppresses B (surrogate): every suffix X of A with |X| >= s leaves at
/// most f elements of B outside N(X). A and B must be ascending and
/// disjoint (Error(kDomain) otherwise).
OppressOutcome oppress_check(const Colouring& col,
                             const std::vector<Ordinal>& a,
                             const std::vector<Ordinal>& b,
                             const OppressParams& params);

/// oppress_check plus |N(x) ∩ B| <= g for every x in A.
OppressOutcome harass_check(const Colouring& col, const std::vector<Ordinal>& a,
                            const std::vector<Ordinal>& b,
                            const OppressParams& params, std::size_t g);

struct Refinement {
  bool ok = false;
  std::vector<Ordinal> a0;
  std::vector<Ordinal> b0;
  std::optional<Ordinal> blocker;  // first B element that could not be kept
  std::string detail;
};

/// Picks an s-element A0 inside A (the suffix first, then other subsets
/// up to a budget) minimising the b with |A0 \ N(b)| > g, and keeps the
/// rest of B as B0. Fails when more than f elements of B drop out.
Refinement harassment_refine(const Colouring& col, const std::vector<Ordinal>& a,
                             const std::vector<Ordinal>& b,
                             const OppressParams& params, std::size_t g);

}  // namespace ordlab
