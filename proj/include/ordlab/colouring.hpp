#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordlab/ordinal.hpp"

namespace ordlab {

enum class EdgeTag { kNone, kE1, kE2, kE3, kE4 };

struct EdgeFamily {
  EdgeTag tag = EdgeTag::kNone;
  std::uint32_t n = 0;  // CB rank of the higher-rank endpoint
  bool operator==(const EdgeFamily&) const = default;
};

const char* edge_tag_name(EdgeTag tag);

/// The family of the lower-bound graph G_w that contains {a, b}, if any.
/// Throws Error(kDomain) when a == b.
EdgeFamily edge_family(const Ordinal& a, const Ordinal& b);

enum class Provenance { kBuiltin, kSynthesized, kFile };

const char* provenance_name(Provenance p);

using OrdinalPair = std::pair<Ordinal, Ordinal>;

/// A symmetric pair-colouring into {0, 1}. The rule is only ever invoked
/// with its first argument strictly smaller, which makes symmetry hold by
/// construction.
class Colouring {
 public:
  using Rule = std::function<int(const Ordinal& lo, const Ordinal& hi)>;

  Colouring(std::string name, Provenance provenance, Rule rule);

  const std::string& name() const noexcept { return name_; }
  Provenance provenance() const noexcept { return provenance_; }
  const std::optional<Ordinal>& bound() const noexcept { return bound_; }

  /// Throws Error(kDomain) when a == b.
  int colour(const Ordinal& a, const Ordinal& b) const;
  bool adjacent(const Ordinal& a, const Ordinal& b) const {
    return colour(a, b) == 1;
  }
  bool in_domain(const Ordinal& a) const {
    return !bound_ || a < *bound_;
  }

  /// Same rule, domain clipped to ordinals below bound.
  Colouring restricted(const Ordinal& bound) const;
  Colouring renamed(std::string name) const;

 private:
  std::string name_;
  Provenance provenance_;
  Rule rule_;
  std::optional<Ordinal> bound_;
};

Colouring gomega_colouring();
/// The canonical example graph on w^2; ordinals >= w^2 are isolated.
Colouring paper_example_colouring();
Colouring empty_colouring();
Colouring complete_colouring();

/// "gomega", "paper-example", "empty" or "complete".
Colouring builtin_colouring(std::string_view name);

Colouring restrict(const Colouring& col, std::optional<Ordinal> bound);

/// Edge list: one pair of ordinal literals per line, '#' starts a comment.
/// When t is given every literal must lie in its universe.
std::vector<OrdinalPair> parse_edge_list(std::string_view text,
                                         const Truncation* t = nullptr);

/// Colouring whose edges are exactly the listed pairs.
Colouring edge_list_colouring(const std::vector<OrdinalPair>& edges,
                              std::string name);

/// base with the colour of each listed pair flipped.
Colouring toggle_edges(const Colouring& base,
                       const std::vector<OrdinalPair>& pairs,
                       std::string name);

/// Vertices of t's universe inside col's domain, ascending.
std::vector<Ordinal> domain_vertices(const Colouring& col, const Truncation& t);

}  // namespace ordlab
