#include <algorithm>

#include "ordlab/verify.hpp"

namespace ordlab {

const char* step_status_name(StepStatus s) {
  switch (s) {
    case StepStatus::kPass: return "pass";
    case StepStatus::kPassVacuous: return "pass-vacuous";
    case StepStatus::kFail: return "fail";
  }
  return "fail";
}

bool LowerBoundStepReport::all_pass() const {
  return std::none_of(steps.begin(), steps.end(), [](const StepResult& s) {
    return s.status == StepStatus::kFail;
  });
}

namespace {

class Lookup {
 public:
  Lookup(const std::vector<Ordinal>& vertices, const AdjacencyBitmap& bits)
      : vertices_(vertices), bits_(bits) {}

  std::optional<std::size_t> index(const Ordinal& a) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), a);
    if (it == vertices_.end() || *it != a) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }
  bool adjacent(const Ordinal& a, const Ordinal& b) const {
    auto i = index(a), j = index(b);
    return i && j && bits_.test(*i, *j);
  }

 private:
  const std::vector<Ordinal>& vertices_;
  const AdjacencyBitmap& bits_;
};

void record(StepResult& step, std::vector<Ordinal> witness) {
  if (step.failures++ == 0) step.counterexample = std::move(witness);
  step.status = StepStatus::kFail;
}

void finish(StepResult& step) {
  if (step.status != StepStatus::kFail && step.checked == 0)
    step.status = StepStatus::kPassVacuous;
}

}  // namespace

LowerBoundStepReport check_lowerbound_steps(const Colouring& col,
                                            std::uint32_t k,
                                            const Truncation& t,
                                            const AdjacencyOptions& options) {
  if (k == 0 || 5ull * k > t.max_exp())
    throw Error(ErrorCode::kUsage, "check needs 1 <= k and 5k <= E (k=" +
                                       std::to_string(k) + ", E=" +
                                       std::to_string(t.max_exp()) + ")");
  const std::uint32_t n = t.max_exp();
  const std::uint32_t c = t.max_coeff();
  const AdjacencyResult adj = adjacency(col, t, options);
  const Lookup look(adj.vertices, adj.bits);

  LowerBoundStepReport report;
  report.colouring = col.name();
  report.k = k;
  report.n = n;
  report.max_exp = t.max_exp();
  report.max_coeff = c;
  auto& [a, b, cc, d] = report.steps;
  a.name = "a:subfan-adjacent";
  b.name = "b:rank-n-2-above-adjacent";
  cc.name = "c:rank-n-3-cofinal-neighbour";
  d.name = "d:rank-n-4-bounded-neighbour";

  std::vector<Ordinal> top, two_below;
  for (const Ordinal& v : adj.vertices) {
    if (v.is_zero()) continue;
    if (v.cb_rank() == n) top.push_back(v);
    if (v.cb_rank() == n - 2) two_below.push_back(v);
  }

  // (a)
  for (const Ordinal& alpha : top) {
    for (const Ordinal& child : children(alpha, c)) {
      if (!look.index(child)) continue;
      ++a.checked;
      if (!look.adjacent(child, alpha)) record(a, {child, alpha});
    }
  }

  // (b)
  for (const Ordinal& x : top) {
    for (const Ordinal& y : two_below) {
      if (!(x < y)) continue;
      ++b.checked;
      if (!look.adjacent(x, y)) record(b, {x, y});
    }
  }

  // (c)
  for (std::size_t i = 0; i < top.size(); ++i) {
    const auto below = subtree_rank(top[i], n - 3, t);
    for (std::size_t j = i + 1; j < top.size(); ++j) {
      const Ordinal& beta = top[j];
      if (beta.max_coefficient() >= c) continue;
      ++cc.checked;
      const bool found = std::any_of(below.begin(), below.end(), [&](const Ordinal& g) {
        return look.adjacent(g, beta);
      });
      if (!found) record(cc, {top[i], beta});
    }
  }

  // (d)
  for (std::size_t i = 0; i + 1 < top.size(); ++i) {
    for (const Ordinal& g : subtree_rank(top[i], n - 4, t)) {
      if (!look.index(g)) continue;
      if (std::uint64_t{g.coefficient(n - 1)} + g.coefficient(n - 2) >= c) continue;
      ++d.checked;
      const bool found = std::any_of(top.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                     top.end(), [&](const Ordinal& beta) {
                                       return look.adjacent(g, beta);
                                     });
      if (!found) record(d, {top[i], g});
    }
  }

  for (StepResult& s : report.steps) finish(s);
  return report;
}

}  // namespace ordlab
