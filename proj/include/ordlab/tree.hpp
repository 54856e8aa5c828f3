#pragma once

// Tree order on ordinals below w^w: beta <| alpha iff alpha = beta + w^g
// for some g > CB(beta), g >= 1. parent() is the cover relation.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordlab/ordinal.hpp"

namespace ordlab {

class Colouring;

/// beta == alpha, or beta lies strictly below alpha in the tree.
bool tree_le(const Ordinal& beta, const Ordinal& alpha);

/// beta + w^(CB(beta)+1).
Ordinal parent(const Ordinal& beta);

/// The first m immediate children of alpha. Throws Error(kLeaf) when
/// CB(alpha) == 0.
std::vector<Ordinal> children(const Ordinal& alpha, std::uint32_t m);

/// Members of t's universe lying (weakly) below alpha with CB rank l.
std::vector<Ordinal> subtree_rank(const Ordinal& alpha, std::uint32_t l,
                                  const Truncation& t);

struct TreeCopyCertificate {
  std::vector<std::pair<Ordinal, Ordinal>> map;
};

struct TreeCopyMismatch {
  // First pattern pair whose tree relation is not mirrored in the image.
  Ordinal first;
  Ordinal second;
  std::string reason;
};

/// Tests whether the order-preserving bijection pattern -> image preserves
/// the tree order in both directions. Inputs are treated as sets.
std::optional<TreeCopyCertificate> is_tree_copy(
    std::vector<Ordinal> pattern, std::vector<Ordinal> image,
    TreeCopyMismatch* mismatch = nullptr);

/// Finite stand-in for an independent copy of w^2 closed in its supremum:
/// members are B_1, l_1, B_2, l_2, ..., B_p. The last limit is an anchor
/// and not a member.
struct ClosedGridWitness {
  std::vector<Ordinal> limits;
  std::vector<std::vector<Ordinal>> blocks;

  std::vector<Ordinal> members() const;
};

enum class ViolationClass {
  kShape,
  kRank,
  kClosure,
  kOrder,
  kIndependence,
};

const char* violation_class_name(ViolationClass c);

struct WitnessViolation {
  ViolationClass kind;
  std::string detail;
};

/// Empty result means the witness is valid and independent under col.
std::vector<WitnessViolation> validate_witness(const ClosedGridWitness& w,
                                               const Colouring& col);

std::string serialize_witness(const ClosedGridWitness& w);
ClosedGridWitness parse_witness(std::string_view text);

}  // namespace ordlab
