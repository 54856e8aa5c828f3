#pragma once

// Exhaustive checks and bounded searches over truncations.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ordlab/adjacency.hpp"
#include "ordlab/canonical.hpp"
#include "ordlab/colouring.hpp"
#include "ordlab/tree.hpp"

namespace ordlab {

using Grid = std::vector<std::vector<Ordinal>>;

struct TriangleReport {
  std::string colouring;
  std::uint32_t max_exp = 0;
  std::uint32_t max_coeff = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t triangle_count = 0;
  std::size_t list_limit = 0;
  std::vector<std::array<Ordinal, 3>> triangles;  // lexicographic, capped
  double wall_seconds = 0;
};

/// Every triangle of the bitmap, found edge by edge by intersecting bit
/// rows. Lists at most list_limit of them in lexicographic index order;
/// triangle_count is always exact.
TriangleReport find_triangles(const AdjacencyBitmap& bits,
                              const std::vector<Ordinal>& vertices,
                              unsigned threads = 1,
                              std::size_t list_limit = 64);

/// p rows of the domain, each contributing q ascending elements, pairwise
/// colour 0. Rows are tried in order; returns the first grid found.
std::optional<Grid> search_independent_grid(const Colouring& col,
                                            const Grid& rows, std::size_t p,
                                            std::size_t q,
                                            std::size_t node_budget = 2'000'000);

struct WitnessSearchOptions {
  std::size_t node_budget = 2'000'000;
  // Members and limits are drawn from here when set, else the universe.
  const std::vector<Ordinal>* pool = nullptr;
};

/// Backtracks over limits (higher CB rank first) and then block fills.
std::optional<ClosedGridWitness> search_closed_witness(
    const Colouring& col, const Truncation& t, std::size_t p, std::size_t q,
    std::uint32_t max_limit_rank, const WitnessSearchOptions& options = {});

/// An independent subset of s with `target` elements: exact backtracking
/// while |s| <= exact_threshold, greedy in order above it.
std::optional<std::vector<Ordinal>> independent_subset(
    const Colouring& col, const std::vector<Ordinal>& s, std::size_t target,
    std::size_t exact_threshold = 24);

struct DominatingVertex {
  Ordinal b;
  Grid grid;  // p rows of q elements of A, all adjacent to b
};

/// Groups A by m_a = min(N(a) ∩ B), tries the most frequent values first,
/// then the rest of B, and returns the first b whose neighbourhood holds a
/// p x q grid of A.
std::optional<DominatingVertex> dominating_vertex(const Colouring& col,
                                                  const Grid& a,
                                                  const std::vector<Ordinal>& b,
                                                  std::size_t p, std::size_t q);

enum class StepStatus { kPass, kPassVacuous, kFail };

const char* step_status_name(StepStatus s);

struct StepResult {
  std::string name;
  StepStatus status = StepStatus::kPass;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<Ordinal> counterexample;  // first failure, in a fixed order
};

struct LowerBoundStepReport {
  std::string colouring;
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  std::uint32_t max_exp = 0;
  std::uint32_t max_coeff = 0;
  std::array<StepResult, 4> steps;
  bool all_pass() const;
};

/// The four finite sub-steps of the lower-bound claim, with n = E:
///  (a) every universe child of a rank-n vertex is adjacent to it;
///  (b) x < y with ranks n and n-2 are adjacent;
///  (c) for rank-n a < b with max coeff(b) < C some rank-(n-3) vertex below
///      a is adjacent to b;
///  (d) for rank-n a below the largest rank-n member, every rank-(n-4) g
///      below a with g_(n-1) + g_(n-2) < C has a rank-n neighbour above a.
/// Throws Error(kUsage) unless 1 <= k and 5k <= E.
LowerBoundStepReport check_lowerbound_steps(const Colouring& col,
                                            std::uint32_t k,
                                            const Truncation& t,
                                            const AdjacencyOptions& options = {});

struct UpperParams {
  std::size_t p = 2;
  std::size_t q = 2;
  std::uint32_t deficiency = 1;
  std::uint32_t retry_budget = 8;
  std::size_t min_suffix = 0;  // 0: half of the slice
  std::size_t max_missed = 0;
  std::size_t per_element = 0;  // g; 0: |B|
  std::uint32_t max_limit_rank = 5;
  std::size_t node_budget = 200'000;
};

struct ExtractorState {
  std::uint32_t t1 = 0;
  std::uint32_t t2 = 0;
  std::vector<Ordinal> anchors;
  std::vector<std::array<std::size_t, 2>> slice_sizes;  // per kept anchor
  std::vector<std::string> log;
};

struct UpperOutcome {
  std::optional<ClosedGridWitness> witness;
  bool scarcity_violated = false;
  std::string stage;       // last stage reached
  std::string diagnostic;  // empty when a witness was emitted
  ExtractorState state;
};

/// Staged extraction of an independent closed copy of w^2 from a colouring
/// of a w^(top+1) truncation, top = tables.k() - 1. Any emitted witness has
/// passed validate_witness.
UpperOutcome extract_upper(const Colouring& col, const Truncation& t,
                           const CanonicalTables& tables,
                           const UpperParams& params = {});

}  // namespace ordlab
