#include <algorithm>
#include <map>

#include "ordlab/verify.hpp"

namespace ordlab {

namespace {

bool independent_of(const Colouring& col, const Ordinal& x,
                    const std::vector<Ordinal>& chosen) {
  for (const Ordinal& y : chosen)
    if (x == y || col.colour(x, y) != 0) return false;
  return true;
}

bool linked(const Colouring& col, const Ordinal& a, const Ordinal& b) {
  return a != b && col.adjacent(a, b);
}

class GridSearch {
 public:
  GridSearch(const Colouring& col, const Grid& rows, std::size_t p,
             std::size_t q, std::size_t budget)
      : col_(col), rows_(rows), p_(p), q_(q), budget_(budget) {}

  std::optional<Grid> run() {
    if (p_ == 0) return Grid{};
    if (row(0, 0)) return grid_;
    return std::nullopt;
  }

 private:
  bool row(std::size_t start, std::size_t done) {
    if (done == p_) return true;
    for (std::size_t r = start; r < rows_.size(); ++r) {
      if (rows_.size() - r < p_ - done) return false;
      if (rows_[r].size() < q_) continue;
      grid_.emplace_back();
      if (element(r, 0, done)) return true;
      grid_.pop_back();
      if (spent()) return false;
    }
    return false;
  }

  bool element(std::size_t r, std::size_t from, std::size_t done) {
    if (grid_.back().size() == q_) return row(r + 1, done + 1);
    const auto& src = rows_[r];
    for (std::size_t e = from; e < src.size(); ++e) {
      if (src.size() - e < q_ - grid_.back().size()) return false;
      if (spent()) return false;
      ++nodes_;
      const Ordinal& x = src[e];
      if (!grid_.back().empty() && !(grid_.back().back() < x)) continue;
      if (!independent_of(col_, x, chosen_)) continue;
      chosen_.push_back(x);
      grid_.back().push_back(x);
      if (element(r, e + 1, done)) return true;
      grid_.back().pop_back();
      chosen_.pop_back();
    }
    return false;
  }

  bool spent() const { return nodes_ >= budget_; }

  const Colouring& col_;
  const Grid& rows_;
  std::size_t p_, q_, budget_;
  std::size_t nodes_ = 0;
  Grid grid_;
  std::vector<Ordinal> chosen_;
};

class WitnessSearch {
 public:
  WitnessSearch(const Colouring& col, const Truncation& t, std::size_t p,
                std::size_t q, std::uint32_t max_rank,
                const WitnessSearchOptions& options)
      : col_(col), t_(t), p_(p), q_(q), budget_(options.node_budget) {
    if (options.pool) {
      pool_ = *options.pool;
      std::sort(pool_.begin(), pool_.end());
      pool_.erase(std::unique(pool_.begin(), pool_.end()), pool_.end());
      restricted_ = true;
    } else {
      pool_ = t.enumerate();
    }
    std::erase_if(pool_, [&](const Ordinal& a) { return !col.in_domain(a); });
    for (const Ordinal& a : pool_) {
      const std::uint32_t r = a.is_zero() ? 0 : a.cb_rank();
      if (r >= 1 && r <= max_rank) limit_candidates_.push_back(a);
    }
    std::stable_sort(limit_candidates_.begin(), limit_candidates_.end(),
                     [](const Ordinal& a, const Ordinal& b) {
                       return a.cb_rank() > b.cb_rank();
                     });
  }

  std::optional<ClosedGridWitness> run() {
    if (p_ == 0 || q_ == 0) return std::nullopt;
    witness_.blocks.reserve(p_);
    witness_.limits.reserve(p_);
    if (limit(0)) return witness_;
    return std::nullopt;
  }

 private:
  bool in_pool(const Ordinal& a) const {
    return !restricted_ || std::binary_search(pool_.begin(), pool_.end(), a);
  }

  const Ordinal* floor() const {
    return witness_.limits.empty() ? nullptr : &witness_.limits.back();
  }

  bool limit(std::size_t i) {
    if (i == p_) return true;
    for (const Ordinal& lambda : limit_candidates_) {
      if (spent()) return false;
      ++nodes_;
      if (const Ordinal* f = floor(); f && !(*f < lambda)) continue;
      const bool member = i + 1 < p_;
      if (member && !independent_of(col_, lambda, members_)) continue;
      for (std::uint32_t r = lambda.cb_rank(); r-- > 0;) {
        std::vector<Ordinal> cands;
        for (const Ordinal& b : subtree_rank(lambda, r, t_)) {
          if (b == lambda || !col_.in_domain(b) || !in_pool(b)) continue;
          if (const Ordinal* f = floor(); f && !(*f < b)) continue;
          if (member && col_.colour(b, lambda) != 0) continue;
          if (!independent_of(col_, b, members_)) continue;
          cands.push_back(b);
        }
        if (cands.size() < q_) continue;
        witness_.blocks.emplace_back();
        if (block(i, lambda, cands, 0)) return true;
        witness_.blocks.pop_back();
        if (spent()) return false;
      }
    }
    return false;
  }

  bool block(std::size_t i, const Ordinal& lambda,
             const std::vector<Ordinal>& cands, std::size_t from) {
    auto& blk = witness_.blocks.back();
    if (blk.size() == q_) {
      const bool member = i + 1 < p_;
      witness_.limits.push_back(lambda);
      if (member) members_.push_back(lambda);
      if (limit(i + 1)) return true;
      if (member) members_.pop_back();
      witness_.limits.pop_back();
      return false;
    }
    for (std::size_t e = from; e < cands.size(); ++e) {
      if (cands.size() - e < q_ - blk.size()) return false;
      if (spent()) return false;
      ++nodes_;
      if (!independent_of(col_, cands[e], members_)) continue;
      members_.push_back(cands[e]);
      blk.push_back(cands[e]);
      if (block(i, lambda, cands, e + 1)) return true;
      blk.pop_back();
      members_.pop_back();
    }
    return false;
  }

  bool spent() const { return nodes_ >= budget_; }

  const Colouring& col_;
  const Truncation& t_;
  std::size_t p_, q_, budget_;
  std::size_t nodes_ = 0;
  bool restricted_ = false;
  std::vector<Ordinal> pool_;
  std::vector<Ordinal> limit_candidates_;
  std::vector<Ordinal> members_;
  ClosedGridWitness witness_;
};

bool exact_subset(const Colouring& col, const std::vector<Ordinal>& s,
                  std::size_t from, std::size_t target,
                  std::vector<Ordinal>& chosen) {
  if (chosen.size() == target) return true;
  for (std::size_t i = from; i < s.size(); ++i) {
    if (s.size() - i < target - chosen.size()) return false;
    if (!independent_of(col, s[i], chosen)) continue;
    chosen.push_back(s[i]);
    if (exact_subset(col, s, i + 1, target, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<Grid> search_independent_grid(const Colouring& col,
                                            const Grid& rows, std::size_t p,
                                            std::size_t q,
                                            std::size_t node_budget) {
  return GridSearch(col, rows, p, q, node_budget).run();
}

std::optional<ClosedGridWitness> search_closed_witness(
    const Colouring& col, const Truncation& t, std::size_t p, std::size_t q,
    std::uint32_t max_limit_rank, const WitnessSearchOptions& options) {
  auto found = WitnessSearch(col, t, p, q, max_limit_rank, options).run();
  if (found && !validate_witness(*found, col).empty())
    throw Error(ErrorCode::kDomain, "search produced an invalid witness");
  return found;
}

std::optional<std::vector<Ordinal>> independent_subset(
    const Colouring& col, const std::vector<Ordinal>& s, std::size_t target,
    std::size_t exact_threshold) {
  std::vector<Ordinal> chosen;
  if (s.size() <= exact_threshold) {
    if (!exact_subset(col, s, 0, target, chosen)) return std::nullopt;
  } else {
    for (const Ordinal& x : s) {
      if (chosen.size() == target) break;
      if (independent_of(col, x, chosen)) chosen.push_back(x);
    }
    if (chosen.size() < target) return std::nullopt;
  }
  for (std::size_t i = 0; i < chosen.size(); ++i)
    for (std::size_t j = i + 1; j < chosen.size(); ++j)
      if (col.colour(chosen[i], chosen[j]) != 0)
        throw Error(ErrorCode::kDomain, "independent subset check failed");
  return chosen;
}

std::optional<DominatingVertex> dominating_vertex(const Colouring& col,
                                                  const Grid& a,
                                                  const std::vector<Ordinal>& b,
                                                  std::size_t p, std::size_t q) {
  std::map<Ordinal, std::size_t> freq;
  for (const auto& row : a)
    for (const Ordinal& x : row)
      for (const Ordinal& y : b)
        if (linked(col, x, y)) {
          ++freq[y];
          break;
        }

  std::vector<std::pair<Ordinal, std::size_t>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& l, const auto& r) { return l.second > r.second; });
  std::vector<Ordinal> order;
  for (const auto& [y, n] : ranked) order.push_back(y);
  for (const Ordinal& y : b)
    if (!freq.contains(y)) order.push_back(y);

  for (const Ordinal& y : order) {
    Grid grid;
    for (const auto& row : a) {
      std::vector<Ordinal> hit;
      for (const Ordinal& x : row) {
        if (hit.size() == q) break;
        if (linked(col, x, y)) hit.push_back(x);
      }
      if (hit.size() == q) grid.push_back(std::move(hit));
      if (grid.size() == p) return DominatingVertex{y, std::move(grid)};
    }
  }
  return std::nullopt;
}

}  // namespace ordlab
