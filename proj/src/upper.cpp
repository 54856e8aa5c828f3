#include <algorithm>
#include <map>

#include "ordlab/verify.hpp"

namespace ordlab {

namespace {

struct Slice {
  SliceGrid grid;
  std::vector<Ordinal> kept;  // grid points surviving the thinning
};

std::string join(const std::vector<Ordinal>& xs) {
  std::string out;
  for (const Ordinal& x : xs) {
    if (!out.empty()) out += ' ';
    out += format_ordinal(x);
  }
  return out;
}

bool avoids_large(const Colouring& col, const SliceGrid& g, const Ordinal& h,
                  std::uint32_t deficiency) {
  std::vector<char> mask(g.points.size());
  for (std::size_t i = 0; i < g.points.size(); ++i)
    mask[i] = g.points[i] == h ? 0 : !col.adjacent(g.points[i], h);
  LargenessSpec spec{g.levels, g.side,
                     std::min(deficiency, g.side == 0 ? 0 : g.side - 1)};
  return is_large_mask(mask, spec);
}

class Extractor {
 public:
  Extractor(const Colouring& col, const Truncation& t,
            const CanonicalTables& tables, const UpperParams& params)
      : col_(col), t_(t), tables_(tables), params_(params) {}

  UpperOutcome run() {
    if (!scarcity_check(tables_).empty()) return delegate();
    if (tables_.k() < 3 || t_.max_exp() + 1 < tables_.k())
      return fail("0:shape", "tables k=" + std::to_string(tables_.k()) +
                                 " needs k >= 3 and E >= k-1");
    top_ = tables_.k() - 1;
    if (!select_ranks()) return std::move(out_);
    if (!thin_anchors()) return std::move(out_);
    return oppression();
  }

 private:
  UpperOutcome delegate() {
    out_.scarcity_violated = true;
    out_.stage = "scarcity";
    log("scarcity violated; delegating to closed witness search");
    WitnessSearchOptions opts;
    opts.node_budget = params_.node_budget;
    out_.witness = search_closed_witness(col_, t_, params_.p, params_.q,
                                         params_.max_limit_rank, opts);
    if (!out_.witness) out_.diagnostic = "scarcity: delegated search found nothing";
    return std::move(out_);
  }

  UpperOutcome fail(std::string stage, std::string why) {
    out_.stage = stage;
    out_.diagnostic = stage + ": " + why;
    log(out_.diagnostic);
    return std::move(out_);
  }

  void log(std::string line) { out_.state.log.push_back(std::move(line)); }

  bool select_ranks() {
    out_.stage = "1:select-ranks";
    std::vector<std::uint32_t> ok;
    for (std::uint32_t r = 0; r < top_ && ok.size() < 2; ++r)
      if (tables_.descolor(top_, r) == 0 && tables_.domcolor(r, top_) == 0 &&
          tables_.domcolor(top_, r) == 0)
        ok.push_back(r);
    if (ok.size() < 2) {
      fail(out_.stage, "fewer than two ranks below " + std::to_string(top_) +
                           " with all three table entries 0");
      return false;
    }
    out_.state.t1 = ok[0];
    out_.state.t2 = ok[1];
    log("t1=" + std::to_string(ok[0]) + " t2=" + std::to_string(ok[1]));
    return true;
  }

  Ordinal anchor(std::uint32_t i) const { return Ordinal::power(top_, i); }

  bool thin_anchors() {
    out_.stage = "2:thin-anchors";
    const std::uint32_t c = t_.max_coeff();
    const std::size_t need = params_.p + 1;
    const std::uint32_t ranks[2] = {out_.state.t1, out_.state.t2};

    std::map<std::uint32_t, std::array<SliceGrid, 2>> grids;
    for (std::uint32_t i = 1; i <= c; ++i)
      for (int j = 0; j < 2; ++j) grids[i][j] = slice_grid(anchor(i), ranks[j], t_);

    std::vector<std::uint32_t> kept;
    const std::uint32_t rounds = std::max(1u, params_.retry_budget);
    for (std::uint32_t round = 0; round < rounds; ++round) {
      kept.clear();
      for (std::uint32_t k = 1 + round; k <= c; ++k) {
        bool good = !grids[k][0].points.empty() && !grids[k][1].points.empty();
        for (std::uint32_t i : kept) {
          if (!good) break;
          for (int j = 0; j < 2 && good; ++j)
            good = avoids_large(col_, grids[k][j], anchor(i), params_.deficiency);
        }
        if (good) kept.push_back(k);
      }
      log("round " + std::to_string(round) + ": kept " +
          std::to_string(kept.size()) + " anchors");
      if (kept.size() >= need) break;
    }
    if (kept.size() < need) {
      fail(out_.stage, "kept " + std::to_string(kept.size()) + " of " +
                           std::to_string(need) + " anchors after " +
                           std::to_string(rounds) + " rounds (C=" +
                           std::to_string(c) + ")");
      return false;
    }

    for (std::size_t a = 0; a < kept.size(); ++a) {
      const Ordinal h = anchor(kept[a]);
      out_.state.anchors.push_back(h);
      std::array<Slice, 2> pair;
      std::array<std::size_t, 2> sizes{};
      for (int j = 0; j < 2; ++j) {
        pair[j].grid = grids[kept[a]][j];
        for (const Ordinal& x : pair[j].grid.points) {
          bool clear = true;
          for (std::size_t e = 0; e < a && clear; ++e)
            clear = !col_.adjacent(x, out_.state.anchors[e]);
          if (clear) pair[j].kept.push_back(x);
        }
        sizes[j] = pair[j].kept.size();
      }
      out_.state.slice_sizes.push_back(sizes);
      slices_.push_back(std::move(pair));
    }
    return true;
  }

  OppressParams oppress_params(std::size_t slice) const {
    OppressParams op;
    op.min_suffix = params_.min_suffix ? params_.min_suffix
                                       : std::max<std::size_t>(1, slice / 2);
    op.max_missed = params_.max_missed;
    return op;
  }

  UpperOutcome oppression() {
    out_.stage = "3:oppression";
    const auto& anchors = out_.state.anchors;
    for (std::size_t a = 0; a + 1 < anchors.size(); ++a) {
      const std::vector<Ordinal> later(anchors.begin() + static_cast<std::ptrdiff_t>(a) + 1,
                                       anchors.end());
      for (int j = 1; j >= 0; --j) {
        const auto& w = slices_[a][j].kept;
        if (w.empty()) continue;
        const OppressOutcome res = oppress_check(col_, w, later, oppress_params(w.size()));
        if (!res.ok) {
          log("anchor " + format_ordinal(anchors[a]) + " slice " +
              std::to_string(j ? out_.state.t2 : out_.state.t1) +
              " does not oppress later anchors; survivors " + join(res.survivors));
          return xy_copy(res.survivors);
        }
      }
    }
    log("every slice oppresses the later anchors");
    return harassment();
  }

  // Limits from the surviving anchors, blocks from their own slices.
  UpperOutcome xy_copy(const std::vector<Ordinal>& survivors) {
    out_.stage = "4:xy-copy";
    const std::size_t p = params_.p;
    auto limits = independent_subset(col_, survivors, p);
    if (!limits) {
      std::vector<Ordinal> all = out_.state.anchors;
      limits = independent_subset(col_, all, p);
    }
    if (!limits) return fail(out_.stage, "no " + std::to_string(p) + " independent anchors");

    for (int j = 1; j >= 0; --j) {
      Grid rows;
      for (std::size_t i = 0; i < limits->size(); ++i) {
        const auto pos = std::find(out_.state.anchors.begin(),
                                   out_.state.anchors.end(), (*limits)[i]) -
                         out_.state.anchors.begin();
        std::vector<Ordinal> row;
        for (const Ordinal& x : slices_[static_cast<std::size_t>(pos)][j].kept) {
          if (i > 0 && !((*limits)[i - 1] < x)) continue;
          bool clear = true;
          for (std::size_t e = 0; e + 1 < limits->size() && clear; ++e)
            clear = col_.colour(x, (*limits)[e]) == 0;
          if (clear) row.push_back(x);
        }
        rows.push_back(std::move(row));
      }
      auto grid = search_independent_grid(col_, rows, p, params_.q, params_.node_budget);
      if (!grid) continue;
      ClosedGridWitness w{*limits, *grid};
      if (emit(std::move(w))) return std::move(out_);
    }
    return fail(out_.stage, "no independent " + std::to_string(p) + "x" +
                                std::to_string(params_.q) +
                                " grid in the surviving slices");
  }

  UpperOutcome harassment() {
    out_.stage = "4:harass-refine";
    const auto& anchors = out_.state.anchors;
    const auto& a1 = slices_[0][0].kept;
    const auto& a2 = slices_[0][1].kept;
    const std::vector<Ordinal> later(anchors.begin() + 1, anchors.end());
    const std::size_t g = params_.per_element ? params_.per_element : later.size();
    const Refinement ref = harassment_refine(col_, a2, later, oppress_params(a2.size()), g);
    if (!ref.ok)
      return fail(out_.stage, ref.detail + (ref.blocker ? " blocker " + format_ordinal(*ref.blocker) : ""));
    if (ref.b0.empty()) return fail(out_.stage, "refinement kept no anchors");

    out_.stage = "5:dominating-vertex";
    Grid rows;
    std::map<Ordinal, std::vector<Ordinal>> by_parent;
    for (const Ordinal& x : a1) by_parent[parent(x)].push_back(x);
    for (auto& [par, xs] : by_parent) rows.push_back(std::move(xs));
    const auto dom = dominating_vertex(col_, rows, ref.b0, params_.p, params_.q);
    if (!dom) return fail(out_.stage, "no anchor dominates a " + std::to_string(params_.p) + "x" + std::to_string(params_.q) + " grid of A1");
    log("dominating anchor " + format_ordinal(dom->b));

    std::vector<Ordinal> pool;
    for (const auto* part : {&a1, &a2})
      for (const Ordinal& x : *part)
        if (x != dom->b && col_.adjacent(x, dom->b)) pool.push_back(x);
    WitnessSearchOptions opts;
    opts.node_budget = params_.node_budget;
    opts.pool = &pool;
    auto w = search_closed_witness(col_, t_, params_.p, params_.q,
                                   std::max(out_.state.t1, out_.state.t2), opts);
    if (w && emit(std::move(*w))) return std::move(out_);
    return fail(out_.stage, "no closed witness inside N(" + format_ordinal(dom->b) +
                                ") over " + std::to_string(pool.size()) + " candidates");
  }

  bool emit(ClosedGridWitness w) {
    const auto problems = validate_witness(w, col_);
    if (!problems.empty()) {
      log("rejected candidate: " + std::string(violation_class_name(problems.front().kind)) +
          " " + problems.front().detail);
      return false;
    }
    out_.witness = std::move(w);
    out_.diagnostic.clear();
    log("witness emitted at " + out_.stage);
    return true;
  }

  const Colouring& col_;
  const Truncation& t_;
  const CanonicalTables& tables_;
  const UpperParams& params_;
  std::uint32_t top_ = 0;
  std::vector<std::array<Slice, 2>> slices_;
  UpperOutcome out_;
};

}  // namespace

UpperOutcome extract_upper(const Colouring& col, const Truncation& t,
                           const CanonicalTables& tables,
                           const UpperParams& params) {
  return Extractor(col, t, tables, params).run();
}

}  // namespace ordlab
