#include "ordlab/report.hpp"

#include <sstream>

namespace ordlab {

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string list(const std::vector<Ordinal>& xs) {
  std::string out;
  for (const Ordinal& x : xs) {
    if (!out.empty()) out += ", ";
    out += format_ordinal(x);
  }
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void add_witness(Report& r, const ClosedGridWitness& w) {
  r.add("limits", list(w.limits));
  for (const auto& block : w.blocks) r.add("block", list(block));
}

}  // namespace

Format parse_format(std::string_view s) {
  if (s == "text") return Format::kText;
  if (s == "csv") return Format::kCsv;
  if (s == "dot") return Format::kDot;
  throw Error(ErrorCode::kUsage, "unknown format '" + std::string(s) + "'");
}

const char* format_name(Format f) {
  switch (f) {
    case Format::kText: return "text";
    case Format::kCsv: return "csv";
    case Format::kDot: return "dot";
  }
  return "text";
}

std::string render(const Report& r, Format f) {
  if (auto it = r.documents.find(f); it != r.documents.end()) return it->second;
  if (!r.documents.empty() || f == Format::kDot)
    throw Error(ErrorCode::kUsage, std::string("format ") + format_name(f) +
                                       " is not available for " + r.command);
  const char* status = r.holds ? "holds" : "violated";
  std::string out;
  if (f == Format::kText) {
    out += "command: " + r.command + "\n";
    for (const auto& [k, v] : r.fields) out += k + ": " + v + "\n";
    out += std::string("status: ") + status + "\n";
  } else {
    out += "key,value\ncommand," + csv_cell(r.command) + "\n";
    for (const auto& [k, v] : r.fields) out += csv_cell(k) + "," + csv_cell(v) + "\n";
    out += std::string("status,") + status + "\n";
  }
  return out;
}

int exit_status(const Report& r) { return r.holds ? 0 : 1; }

int exit_status_of(std::string_view rendered) {
  std::istringstream in{std::string(rendered)};
  std::string line;
  while (std::getline(in, line)) {
    if (line == "status: violated" || line == "status,violated") return 1;
    if (line == "status: holds" || line == "status,holds") return 0;
  }
  return 0;
}

Report triangles_report(const TriangleReport& t) {
  Report r;
  r.command = "check-triangles";
  r.add("colouring", t.colouring);
  r.add("max-exp", std::to_string(t.max_exp));
  r.add("max-coeff", std::to_string(t.max_coeff));
  r.add("vertices", std::to_string(t.vertices));
  r.add("edges", std::to_string(t.edges));
  r.add("triangles", std::to_string(t.triangle_count));
  r.add("listed", std::to_string(t.triangles.size()));
  for (const auto& tri : t.triangles)
    r.add("triangle", list({tri[0], tri[1], tri[2]}));
  r.holds = t.triangle_count == 0;
  return r;
}

Report lowerbound_report(const LowerBoundStepReport& s) {
  Report r;
  r.command = "check-lowerbound";
  r.add("colouring", s.colouring);
  r.add("k", std::to_string(s.k));
  r.add("n", std::to_string(s.n));
  r.add("max-exp", std::to_string(s.max_exp));
  r.add("max-coeff", std::to_string(s.max_coeff));
  for (const StepResult& step : s.steps) {
    r.add("step", step.name + " " + step_status_name(step.status) +
                      " checked=" + std::to_string(step.checked) +
                      " failures=" + std::to_string(step.failures));
    if (!step.counterexample.empty())
      r.add("counterexample", step.name + " " + list(step.counterexample));
  }
  r.holds = s.all_pass();
  return r;
}

Report witness_report(const std::string& colouring, const Truncation& t,
                      std::size_t p, std::size_t q, std::uint32_t max_rank,
                      const std::optional<ClosedGridWitness>& w) {
  Report r;
  r.command = "search-witness";
  r.add("colouring", colouring);
  r.add("max-exp", std::to_string(t.max_exp()));
  r.add("max-coeff", std::to_string(t.max_coeff()));
  r.add("p", std::to_string(p));
  r.add("q", std::to_string(q));
  r.add("limit-rank-max", std::to_string(max_rank));
  r.add("found", yes_no(w.has_value()));
  if (w) add_witness(r, *w);
  r.holds = w.has_value();
  return r;
}

Report audit_report(const std::string& colouring, const AuditReport& a) {
  constexpr std::size_t kShown = 64;
  Report r;
  r.command = "audit";
  r.add("colouring", colouring);
  r.add("k", std::to_string(a.k));
  r.add("deficiency", std::to_string(a.deficiency));
  r.add("core-size", std::to_string(a.core_size));
  r.add("triples-checked", std::to_string(a.triples_checked));
  r.add("violations", std::to_string(a.violations.size()));
  for (std::size_t i = 0; i < a.violations.size() && i < kShown; ++i) {
    const AuditViolation& v = a.violations[i];
    r.add("violation", "condition=" + std::to_string(static_cast<int>(v.condition)) +
                           " theta=" + format_ordinal(v.theta) +
                           " alpha=" + format_ordinal(v.alpha) +
                           " l=" + std::to_string(v.l) + " " + v.detail);
  }
  r.holds = a.violations.empty();
  return r;
}

Report tables_report(const std::string& colouring, std::uint32_t deficiency,
                     const CanonicalTables& tables) {
  Report r;
  r.command = "extract-tables";
  r.add("colouring", colouring);
  r.add("k", std::to_string(tables.k()));
  r.add("deficiency", std::to_string(deficiency));
  for (const auto& [jl, v] : tables.descolor_map())
    r.add("descolor", std::to_string(jl.first) + " " + std::to_string(jl.second) +
                          " " + std::to_string(v));
  for (const auto& [jl, v] : tables.domcolor_map())
    r.add("domcolor", std::to_string(jl.first) + " " + std::to_string(jl.second) +
                          " " + std::to_string(v));
  const auto scarce = scarcity_check(tables);
  r.add("scarcity-violations", std::to_string(scarce.size()));
  for (const ScarcityViolation& v : scarce)
    r.add("scarcity", "condition=" + std::to_string(static_cast<int>(v.condition)) +
                          " fixed=" + std::to_string(v.fixed) + " first=" +
                          std::to_string(v.first) + " second=" + std::to_string(v.second));
  return r;
}

Report upper_report(const std::string& colouring, const UpperParams& params,
                    const UpperOutcome& o) {
  Report r;
  r.command = "extract-upper";
  r.add("colouring", colouring);
  r.add("p", std::to_string(params.p));
  r.add("q", std::to_string(params.q));
  r.add("deficiency", std::to_string(params.deficiency));
  r.add("scarcity-violated", yes_no(o.scarcity_violated));
  r.add("stage", o.stage);
  if (!o.scarcity_violated) {
    r.add("t1", std::to_string(o.state.t1));
    r.add("t2", std::to_string(o.state.t2));
    r.add("anchors", list(o.state.anchors));
    for (const auto& s : o.state.slice_sizes)
      r.add("slice-sizes", std::to_string(s[0]) + " " + std::to_string(s[1]));
  }
  for (const std::string& line : o.state.log) r.add("log", line);
  r.add("found", yes_no(o.witness.has_value()));
  if (o.witness) add_witness(r, *o.witness);
  else r.add("diagnostic", o.diagnostic);
  r.holds = o.witness.has_value();
  return r;
}

Report edge_report(const Ordinal& a, const Ordinal& b, const Colouring& col) {
  const EdgeFamily fam = edge_family(a, b);
  const int colour = col.colour(a, b);
  Report r;
  r.command = "edge";
  std::string text = edge_tag_name(fam.tag);
  if (fam.tag != EdgeTag::kNone) text += " n=" + std::to_string(fam.n);
  text += " colour=" + std::to_string(colour);
  r.documents[Format::kText] = text + "\n";
  r.documents[Format::kCsv] = "family,n,colour\n" + std::string(edge_tag_name(fam.tag)) +
                              "," + (fam.tag == EdgeTag::kNone ? "" : std::to_string(fam.n)) +
                              "," + std::to_string(colour) + "\n";
  return r;
}

Report enumerate_report(const std::vector<Ordinal>& members) {
  Report r;
  r.command = "enumerate";
  std::string text, csv = "index,ordinal,cb-rank\n";
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string lit = format_ordinal(members[i]);
    text += lit + "\n";
    csv += std::to_string(i) + "," + lit + "," +
           std::to_string(members[i].is_zero() ? 0 : members[i].cb_rank()) + "\n";
  }
  r.documents[Format::kText] = text;
  r.documents[Format::kCsv] = csv;
  return r;
}

Report tree_report(const Ordinal& root, std::uint32_t depth, std::uint32_t fanout) {
  const std::uint32_t rank = root.is_zero() ? 0 : root.cb_rank();
  if (depth > rank)
    throw Error(ErrorCode::kUsage, "depth " + std::to_string(depth) +
                                       " exceeds the rank of " + format_ordinal(root));
  struct Node {
    Ordinal value;
    std::size_t parent;
    std::uint32_t level;
  };
  std::vector<Node> nodes{{root, 0, 0}};
  // Pre-order walk keeps each parent's children contiguous.
  auto walk = [&](auto&& self, std::size_t at) -> void {
    if (nodes[at].level == depth) return;
    for (const Ordinal& c : children(nodes[at].value, fanout)) {
      nodes.push_back({c, at, nodes[at].level + 1});
      self(self, nodes.size() - 1);
    }
  };
  walk(walk, 0);

  Report r;
  r.command = "export-tree";
  std::string dot = "digraph tree {\n";
  std::string text, csv = "node,label,parent,level\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string lit = format_ordinal(nodes[i].value);
    dot += "  n" + std::to_string(i) + " [label=\"" + lit + "\"];\n";
    text += std::string(2 * nodes[i].level, ' ') + lit + "\n";
    csv += std::to_string(i) + "," + lit + "," +
           (i == 0 ? "" : std::to_string(nodes[i].parent)) + "," +
           std::to_string(nodes[i].level) + "\n";
  }
  for (std::size_t i = 1; i < nodes.size(); ++i)
    dot += "  n" + std::to_string(nodes[i].parent) + " -> n" + std::to_string(i) + ";\n";
  dot += "}\n";
  r.documents[Format::kDot] = dot;
  r.documents[Format::kText] = text;
  r.documents[Format::kCsv] = csv;
  return r;
}

}  // namespace ordlab
