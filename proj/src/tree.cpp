#include "ordlab/tree.hpp"

#include <algorithm>
#include <sstream>

#include "ordlab/colouring.hpp"

namespace ordlab {

bool tree_le(const Ordinal& beta, const Ordinal& alpha) {
  if (beta == alpha) return true;
  if (alpha.is_zero()) return false;
  // beta + w^g always has CB rank g, so g is forced to be CB(alpha).
  const std::uint32_t g = alpha.cb_rank();
  if (g == 0 || g <= beta.cb_rank()) return false;
  // beta + w^g keeps beta's terms above g and bumps the coefficient at g.
  const auto& bt = beta.terms();
  const auto& at = alpha.terms();
  std::size_t i = 0;
  while (i < bt.size() && bt[i].exponent > g) ++i;
  const std::uint32_t carry =
      (i < bt.size() && bt[i].exponent == g) ? bt[i].coefficient : 0;
  if (at.size() != i + 1) return false;
  for (std::size_t j = 0; j < i; ++j)
    if (!(at[j] == bt[j])) return false;
  return at[i].exponent == g &&
         static_cast<std::uint64_t>(at[i].coefficient) ==
             static_cast<std::uint64_t>(carry) + 1;
}

Ordinal parent(const Ordinal& beta) {
  return add(beta, Ordinal::power(beta.cb_rank() + 1));
}

std::vector<Ordinal> children(const Ordinal& alpha, std::uint32_t m) {
  const std::uint32_t c = alpha.cb_rank();
  if (c == 0)
    throw Error(ErrorCode::kLeaf,
                format_ordinal(alpha) + " has CB rank 0 and no children");
  std::vector<Term> base = alpha.terms();
  if (--base.back().coefficient == 0) base.pop_back();
  std::vector<Ordinal> out;
  out.reserve(m);
  for (std::uint32_t i = 1; i <= m; ++i) {
    std::vector<Term> terms = base;
    terms.push_back(Term{c - 1, i});
    out.push_back(Ordinal::from_terms(std::move(terms)));
  }
  return out;
}

std::vector<Ordinal> subtree_rank(const Ordinal& alpha, std::uint32_t l,
                                  const Truncation& t) {
  const std::uint32_t c = alpha.cb_rank();
  std::vector<Ordinal> out;
  if (l > c || (l == c && !t.contains(alpha))) return out;
  if (l == c) return {alpha};
  // Members are base + w^(c-1)*x_(c-1) + ... + w^l*x_l with x_l >= 1,
  // where base is alpha with its last coefficient lowered by one.
  std::vector<Term> base = alpha.terms();
  if (--base.back().coefficient == 0) base.pop_back();
  if (!t.contains(Ordinal::from_terms(base))) return out;
  const std::uint32_t top = std::min(c - 1, t.max_exp());
  if (l > top) return out;
  const std::uint32_t width = top - l + 1;
  if (l == 0 && base.empty()) out.push_back(Ordinal{});  // 0 sits below w^c
  std::vector<std::uint32_t> digits(width, 0);  // digits[0] is exponent top
  digits.back() = 1;
  for (;;) {
    std::vector<Term> terms = base;
    for (std::uint32_t i = 0; i < width; ++i)
      if (digits[i] != 0) terms.push_back(Term{top - i, digits[i]});
    out.push_back(Ordinal::from_terms(std::move(terms)));
    // Odometer increment, least significant digit last; digit for l is >= 1.
    std::size_t pos = width;
    while (pos > 0) {
      --pos;
      const std::uint32_t floor = (pos + 1 == width) ? 1 : 0;
      if (digits[pos] < t.max_coeff()) {
        ++digits[pos];
        break;
      }
      digits[pos] = floor;
      if (pos == 0) return out;
    }
  }
}

std::optional<TreeCopyCertificate> is_tree_copy(std::vector<Ordinal> pattern,
                                                std::vector<Ordinal> image,
                                                TreeCopyMismatch* mismatch) {
  auto normalize = [](std::vector<Ordinal>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  normalize(pattern);
  normalize(image);
  if (pattern.size() != image.size()) {
    if (mismatch) *mismatch = {Ordinal{}, Ordinal{}, "cardinality differs"};
    return std::nullopt;
  }
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    for (std::size_t j = 0; j < pattern.size(); ++j) {
      if (i == j) continue;
      if (tree_le(pattern[i], pattern[j]) != tree_le(image[i], image[j])) {
        if (mismatch) {
          *mismatch = {pattern[i], pattern[j],
                       tree_le(pattern[i], pattern[j])
                           ? "tree relation lost in image"
                           : "tree relation created in image"};
        }
        return std::nullopt;
      }
    }
  }
  TreeCopyCertificate cert;
  for (std::size_t i = 0; i < pattern.size(); ++i)
    cert.map.emplace_back(pattern[i], image[i]);
  return cert;
}

std::vector<Ordinal> ClosedGridWitness::members() const {
  std::vector<Ordinal> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    out.insert(out.end(), blocks[i].begin(), blocks[i].end());
    if (i + 1 < limits.size() && i + 1 < blocks.size())
      out.push_back(limits[i]);
  }
  return out;
}

const char* violation_class_name(ViolationClass c) {
  switch (c) {
    case ViolationClass::kShape: return "shape";
    case ViolationClass::kRank: return "rank";
    case ViolationClass::kClosure: return "closure";
    case ViolationClass::kOrder: return "order";
    case ViolationClass::kIndependence: return "independence";
  }
  return "unknown";
}

std::vector<WitnessViolation> validate_witness(const ClosedGridWitness& w,
                                               const Colouring& col) {
  std::vector<WitnessViolation> out;
  auto report = [&](ViolationClass k, std::string detail) {
    out.push_back({k, std::move(detail)});
  };

  const std::size_t p = w.limits.size();
  if (p == 0 || w.blocks.size() != p) {
    report(ViolationClass::kShape, "need p >= 1 limits and exactly p blocks");
    return out;
  }
  const std::size_t q = w.blocks.front().size();
  for (std::size_t i = 0; i < p; ++i) {
    if (w.blocks[i].empty() || w.blocks[i].size() != q) {
      report(ViolationClass::kShape,
             "block " + std::to_string(i + 1) + " has size " +
                 std::to_string(w.blocks[i].size()) + ", expected " +
                 std::to_string(q));
      return out;
    }
  }

  for (std::size_t i = 0; i < p; ++i) {
    const Ordinal& lim = w.limits[i];
    if (lim.cb_rank() < 1 || lim.is_zero())
      report(ViolationClass::kRank,
             "limit " + format_ordinal(lim) + " has CB rank 0");
    const auto& block = w.blocks[i];
    for (const Ordinal& b : block) {
      if (b == lim || !tree_le(b, lim))
        report(ViolationClass::kClosure, format_ordinal(b) +
                                             " is not strictly below " +
                                             format_ordinal(lim) + " in the tree");
      if (i > 0 && !(w.limits[i - 1] < b))
        report(ViolationClass::kClosure,
               format_ordinal(b) + " does not exceed the previous limit " +
                   format_ordinal(w.limits[i - 1]));
    }
    for (const Ordinal& b : block) {
      if (b.cb_rank() != block.front().cb_rank()) {
        report(ViolationClass::kRank, "block " + std::to_string(i + 1) +
                                          " mixes CB ranks");
        break;
      }
    }
  }

  const std::vector<Ordinal> members = w.members();
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (!(members[i - 1] < members[i]))
      report(ViolationClass::kOrder, format_ordinal(members[i - 1]) +
                                         " precedes " +
                                         format_ordinal(members[i]) +
                                         " but is not smaller");
  }

  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (members[i] == members[j]) continue;
      if (col.colour(members[i], members[j]) != 0)
        report(ViolationClass::kIndependence,
               "edge {" + format_ordinal(members[i]) + ", " +
                   format_ordinal(members[j]) + "}");
    }
  }
  return out;
}

std::string serialize_witness(const ClosedGridWitness& w) {
  std::ostringstream os;
  os << "limits";
  for (const Ordinal& l : w.limits) os << ' ' << format_ordinal(l);
  os << '\n';
  for (const auto& block : w.blocks) {
    os << "block";
    for (const Ordinal& b : block) os << ' ' << format_ordinal(b);
    os << '\n';
  }
  return os.str();
}

ClosedGridWitness parse_witness(std::string_view text) {
  ClosedGridWitness w;
  std::istringstream in{std::string(text)};
  std::string line;
  bool saw_limits = false;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::vector<Ordinal> items;
    for (std::string tok; ls >> tok;) items.push_back(parse_ordinal(tok));
    if (key == "limits") {
      if (saw_limits) throw Error(ErrorCode::kSyntax, "duplicate limits line");
      saw_limits = true;
      w.limits = std::move(items);
    } else if (key == "block") {
      w.blocks.push_back(std::move(items));
    } else {
      throw Error(ErrorCode::kSyntax, "unknown witness line '" + key + "'");
    }
  }
  if (!saw_limits) throw Error(ErrorCode::kSyntax, "witness has no limits line");
  return w;
}

}  // namespace ordlab
