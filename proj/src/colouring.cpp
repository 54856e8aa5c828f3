#include "ordlab/colouring.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>

#include "ordlab/tree.hpp"

namespace ordlab {

const char* edge_tag_name(EdgeTag tag) {
  switch (tag) {
    case EdgeTag::kNone: return "none";
    case EdgeTag::kE1: return "E1";
    case EdgeTag::kE2: return "E2";
    case EdgeTag::kE3: return "E3";
    case EdgeTag::kE4: return "E4";
  }
  return "none";
}

EdgeFamily edge_family(const Ordinal& a, const Ordinal& b) {
  if (a == b)
    throw Error(ErrorCode::kDomain,
                "edge_family needs distinct ordinals, got " + format_ordinal(a));
  const bool a_low = a.cb_rank() < b.cb_rank();
  const Ordinal& lo = a_low ? a : b;
  const Ordinal& hi = a_low ? b : a;
  const std::uint32_t n = hi.cb_rank();
  const std::uint32_t gap = n - lo.cb_rank();
  switch (gap) {
    case 1:
      // Ranks differ by one, so lo <| hi is exactly the cover relation.
      if (tree_le(lo, hi)) return {EdgeTag::kE1, n};
      break;
    case 2:
      if (hi < lo) return {EdgeTag::kE2, n};
      break;
    case 3:
      if (lo < hi && !tree_le(lo, hi) &&
          hi.max_coefficient() < lo.coefficient(n - 1))
        return {EdgeTag::kE3, n};
      break;
    case 4:
      if (lo < hi && !tree_le(lo, hi) &&
          static_cast<std::uint64_t>(hi.max_coefficient()) >
              std::uint64_t{lo.coefficient(n - 1)} + lo.coefficient(n - 2))
        return {EdgeTag::kE4, n};
      break;
    default:
      break;
  }
  return {};
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kBuiltin: return "built-in";
    case Provenance::kSynthesized: return "synthesized";
    case Provenance::kFile: return "file";
  }
  return "built-in";
}

Colouring::Colouring(std::string name, Provenance provenance, Rule rule)
    : name_(std::move(name)), provenance_(provenance), rule_(std::move(rule)) {}

int Colouring::colour(const Ordinal& a, const Ordinal& b) const {
  if (a == b)
    throw Error(ErrorCode::kDomain,
                "colour of a pair needs distinct ordinals, got " +
                    format_ordinal(a) + " twice");
  return a < b ? rule_(a, b) : rule_(b, a);
}

Colouring Colouring::restricted(const Ordinal& bound) const {
  Colouring out = *this;
  if (!bound_ || bound < *bound_) out.bound_ = bound;
  out.name_ = name_ + "@" + format_ordinal(*out.bound_);
  return out;
}

Colouring Colouring::renamed(std::string name) const {
  Colouring out = *this;
  out.name_ = std::move(name);
  return out;
}

Colouring gomega_colouring() {
  return Colouring("gomega", Provenance::kBuiltin,
                   [](const Ordinal& lo, const Ordinal& hi) {
                     return edge_family(lo, hi).tag != EdgeTag::kNone ? 1 : 0;
                   });
}

Colouring paper_example_colouring() {
  return Colouring(
      "paper-example", Provenance::kBuiltin,
      [](const Ordinal& lo, const Ordinal& hi) {
        if (lo.leading_exponent() > 1 || hi.leading_exponent() > 1) return 0;
        // lo = w*k + k', hi = w*l + l'
        const std::uint32_t k = lo.coefficient(1), kp = lo.coefficient(0);
        const std::uint32_t l = hi.coefficient(1), lp = hi.coefficient(0);
        const bool limit_rule = kp == 0 && l > k && k > lp && lp > 0;
        const bool successor_rule = k < l && lp > kp && kp > 0;
        return (limit_rule || successor_rule) ? 1 : 0;
      });
}

Colouring empty_colouring() {
  return Colouring("empty", Provenance::kBuiltin,
                   [](const Ordinal&, const Ordinal&) { return 0; });
}

Colouring complete_colouring() {
  return Colouring("complete", Provenance::kBuiltin,
                   [](const Ordinal&, const Ordinal&) { return 1; });
}

Colouring builtin_colouring(std::string_view name) {
  if (name == "gomega") return gomega_colouring();
  if (name == "paper-example") return paper_example_colouring();
  if (name == "empty") return empty_colouring();
  if (name == "complete") return complete_colouring();
  throw Error(ErrorCode::kUsage,
              "unknown built-in colouring '" + std::string(name) + "'");
}

Colouring restrict(const Colouring& col, std::optional<Ordinal> bound) {
  if (!bound) return col;
  return col.restricted(*bound);
}

std::vector<OrdinalPair> parse_edge_list(std::string_view text,
                                         const Truncation* t) {
  std::vector<OrdinalPair> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string x, y, extra;
    if (!(ls >> x)) continue;
    if (!(ls >> y) || (ls >> extra))
      throw Error(ErrorCode::kSyntax, "edge list line " + std::to_string(lineno) +
                                          ": expected exactly two ordinals");
    Ordinal a = parse_ordinal(x);
    Ordinal b = parse_ordinal(y);
    if (a == b)
      throw Error(ErrorCode::kSyntax,
                  "edge list line " + std::to_string(lineno) + ": loop");
    if (t && (!t->contains(a) || !t->contains(b)))
      throw Error(ErrorCode::kRange, "edge list line " + std::to_string(lineno) +
                                         ": ordinal outside the truncation");
    if (b < a) std::swap(a, b);
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

namespace {

std::shared_ptr<const std::set<OrdinalPair>> ordered_pair_set(
    const std::vector<OrdinalPair>& pairs) {
  auto set = std::make_shared<std::set<OrdinalPair>>();
  for (auto [a, b] : pairs) {
    if (b < a) std::swap(a, b);
    set->emplace(std::move(a), std::move(b));
  }
  return set;
}

}  // namespace

Colouring edge_list_colouring(const std::vector<OrdinalPair>& edges,
                              std::string name) {
  auto set = ordered_pair_set(edges);
  return Colouring(std::move(name), Provenance::kFile,
                   [set](const Ordinal& lo, const Ordinal& hi) {
                     return set->count({lo, hi}) ? 1 : 0;
                   });
}

Colouring toggle_edges(const Colouring& base,
                       const std::vector<OrdinalPair>& pairs, std::string name) {
  auto set = ordered_pair_set(pairs);
  Colouring inner = base;
  Colouring out(std::move(name), base.provenance(),
                [set, inner](const Ordinal& lo, const Ordinal& hi) {
                  const int c = inner.colour(lo, hi);
                  return set->count({lo, hi}) ? 1 - c : c;
                });
  if (base.bound()) out = out.restricted(*base.bound()).renamed(out.name());
  return out;
}

std::vector<Ordinal> domain_vertices(const Colouring& col, const Truncation& t) {
  std::vector<Ordinal> out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    Ordinal a = t.at(i);
    if (col.in_domain(a)) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace ordlab
