#include "ordlab/ordlab.h"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <thread>

#include "ordlab/report.hpp"

struct ordlab_ordinal {
  ordlab::Ordinal value;
  std::string literal;
};

struct ordlab_colouring {
  ordlab::Colouring value;
};

struct ordlab_report {
  ordlab::Report report;
  std::map<ordlab::Format, std::string> rendered;
  std::string cache_keys;
  double wall_seconds = 0;
};

namespace {

using namespace ordlab;

thread_local std::string g_last_error;

ordlab_status fail(ordlab_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <typename F>
ordlab_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return ORDLAB_OK;
  } catch (const Error& e) {
    return fail(static_cast<ordlab_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ORDLAB_E_BUDGET, "out of memory");
  } catch (const std::exception& e) {
    return fail(ORDLAB_E_INTERNAL, e.what());
  }
}

ordlab_ordinal* wrap(Ordinal v) {
  std::string lit = format_ordinal(v);
  return new ordlab_ordinal{std::move(v), std::move(lit)};
}

std::uint32_t required(std::int32_t v, const char* flag) {
  if (v < 0) throw Error(ErrorCode::kUsage, std::string("missing --") + flag);
  return static_cast<std::uint32_t>(v);
}

std::uint32_t or_default(std::int32_t v, std::uint32_t fallback) {
  return v < 0 ? fallback : static_cast<std::uint32_t>(v);
}

Truncation truncation(const ordlab_options& o) {
  const std::uint32_t e = required(o.max_exp, "max-exp");
  return Truncation(e, required(o.max_coeff, "max-coeff"));
}

unsigned threads(const ordlab_options& o) {
  if (o.threads) return o.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

AdjacencyOptions adjacency_options(const ordlab_options& o) {
  AdjacencyOptions a;
  a.threads = threads(o);
  if (o.cache_dir && *o.cache_dir) a.cache_dir = std::filesystem::path(o.cache_dir);
  return a;
}

std::string cache_key(const AdjacencyOptions& a, const Colouring& col,
                      const Truncation& t) {
  if (!a.cache_dir) return {};
  return cache_path(*a.cache_dir, col.name(), t).string();
}

Ordinal literal(const char* s, const char* flag) {
  if (!s) throw Error(ErrorCode::kUsage, std::string("missing --") + flag);
  return parse_ordinal(s);
}

void run_command(const std::string& cmd, const Colouring& col,
                 const ordlab_options& o, ordlab_report& out) {
  if (cmd == "check-triangles") {
    const Truncation t = truncation(o);
    const AdjacencyOptions ao = adjacency_options(o);
    const AdjacencyResult adj = adjacency(col, t, ao);
    TriangleReport tr = find_triangles(adj.bits, adj.vertices, ao.threads);
    tr.colouring = col.name();
    tr.max_exp = t.max_exp();
    tr.max_coeff = t.max_coeff();
    out.report = triangles_report(tr);
    out.cache_keys = cache_key(ao, col, t);
  } else if (cmd == "check-lowerbound") {
    const Truncation t = truncation(o);
    const AdjacencyOptions ao = adjacency_options(o);
    out.report = lowerbound_report(check_lowerbound_steps(col, or_default(o.k, 1), t, ao));
    out.cache_keys = cache_key(ao, col, t);
  } else if (cmd == "search-witness") {
    const Truncation t = truncation(o);
    const std::size_t p = or_default(o.p, 2), q = or_default(o.q, 2);
    const std::uint32_t rank = or_default(o.limit_rank_max, t.max_exp());
    out.report = witness_report(col.name(), t, p, q, rank,
                                search_closed_witness(col, t, p, q, rank));
  } else if (cmd == "audit") {
    const Truncation t = truncation(o);
    const std::uint32_t d = or_default(o.deficiency, default_deficiency(t));
    out.report = audit_report(col.name(),
                              audit_canonical(col, t, or_default(o.k, t.max_exp() + 1), d));
  } else if (cmd == "extract-tables") {
    const Truncation t = truncation(o);
    const std::uint32_t d = or_default(o.deficiency, default_deficiency(t));
    const std::uint32_t k = or_default(o.k, t.max_exp() + 1);
    try {
      out.report = tables_report(col.name(), d, extract_tables(col, t, k, d));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDomain) throw;
      out.report = Report{};
      out.report.command = cmd;
      out.report.add("colouring", col.name());
      out.report.add("k", std::to_string(k));
      out.report.add("deficiency", std::to_string(d));
      out.report.add("error", e.what());
      out.report.holds = false;
    }
  } else if (cmd == "extract-upper") {
    const Truncation t = truncation(o);
    UpperParams params;
    params.p = or_default(o.p, 2);
    params.q = or_default(o.q, 2);
    params.deficiency = or_default(o.deficiency, default_deficiency(t));
    params.max_limit_rank = or_default(o.limit_rank_max, params.max_limit_rank);
    std::optional<CanonicalTables> tables;
    UpperOutcome outcome;
    try {
      tables = o.tables_text ? parse_tables(o.tables_text)
                             : extract_tables(col, t, or_default(o.k, t.max_exp() + 1),
                                              params.deficiency);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDomain) throw;
      outcome.stage = "0:tables";
      outcome.diagnostic = std::string("0:tables: ") + e.what();
    }
    if (tables) outcome = extract_upper(col, t, *tables, params);
    out.report = upper_report(col.name(), params, outcome);
  } else if (cmd == "edge") {
    out.report = edge_report(literal(o.a, "a"), literal(o.b, "b"), col);
  } else if (cmd == "enumerate") {
    const Truncation t = truncation(o);
    std::optional<std::uint32_t> rank;
    if (o.rank >= 0) rank = static_cast<std::uint32_t>(o.rank);
    out.report = enumerate_report(t.enumerate(rank));
  } else if (cmd == "export-tree") {
    out.report = tree_report(literal(o.root, "root"), or_default(o.depth, 1),
                             or_default(o.fanout, 3));
  } else {
    throw Error(ErrorCode::kUsage, "unknown command '" + cmd + "'");
  }
}

}  // namespace

extern "C" {

const char* ordlab_version(void) { return "0.1.0"; }

const char* ordlab_last_error(void) { return g_last_error.c_str(); }

const char* ordlab_status_name(ordlab_status s) {
  switch (s) {
    case ORDLAB_OK: return "ok";
    case ORDLAB_E_SYNTAX: return "syntax";
    case ORDLAB_E_RANGE: return "range";
    case ORDLAB_E_OVERFLOW: return "overflow";
    case ORDLAB_E_LEAF: return "leaf";
    case ORDLAB_E_DOMAIN: return "domain";
    case ORDLAB_E_BUDGET: return "budget";
    case ORDLAB_E_IO: return "io";
    case ORDLAB_E_CORRUPT: return "corrupt";
    case ORDLAB_E_USAGE: return "usage";
    case ORDLAB_E_INTERNAL: return "internal";
  }
  return "unknown";
}

ordlab_status ordlab_ordinal_parse(const char* literal, ordlab_ordinal** out) {
  if (!literal || !out) return fail(ORDLAB_E_USAGE, "null argument");
  return guarded([&] { *out = wrap(parse_ordinal(literal)); });
}

void ordlab_ordinal_free(ordlab_ordinal* a) { delete a; }

const char* ordlab_ordinal_literal(const ordlab_ordinal* a) {
  return a ? a->literal.c_str() : "";
}

int ordlab_ordinal_compare(const ordlab_ordinal* a, const ordlab_ordinal* b) {
  const auto c = a->value <=> b->value;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

uint32_t ordlab_ordinal_cb_rank(const ordlab_ordinal* a) {
  return a->value.is_zero() ? 0 : a->value.cb_rank();
}

ordlab_status ordlab_ordinal_add(const ordlab_ordinal* a, const ordlab_ordinal* b,
                                 ordlab_ordinal** out) {
  if (!a || !b || !out) return fail(ORDLAB_E_USAGE, "null argument");
  return guarded([&] { *out = wrap(add(a->value, b->value)); });
}

int ordlab_tree_le(const ordlab_ordinal* beta, const ordlab_ordinal* alpha) {
  return tree_le(beta->value, alpha->value) ? 1 : 0;
}

ordlab_status ordlab_colouring_builtin(const char* name, ordlab_colouring** out) {
  if (!name || !out) return fail(ORDLAB_E_USAGE, "null argument");
  return guarded([&] { *out = new ordlab_colouring{builtin_colouring(name)}; });
}

ordlab_status ordlab_colouring_from_edges(const char* text, ordlab_colouring** out) {
  if (!text || !out) return fail(ORDLAB_E_USAGE, "null argument");
  return guarded([&] {
    char hash[17];
    ordlab_digest(text, std::strlen(text), hash);
    *out = new ordlab_colouring{
        edge_list_colouring(parse_edge_list(text, nullptr), std::string("edges-") + hash)};
  });
}

ordlab_status ordlab_colouring_toggle(const ordlab_colouring* base,
                                      const char* edge_text, ordlab_colouring** out) {
  if (!base || !edge_text || !out) return fail(ORDLAB_E_USAGE, "null argument");
  return guarded([&] {
    const auto pairs = parse_edge_list(edge_text, nullptr);
    char hash[17];
    ordlab_digest(edge_text, std::strlen(edge_text), hash);
    *out = new ordlab_colouring{
        toggle_edges(base->value, pairs, base->value.name() + "+toggle-" + hash)};
  });
}

ordlab_status ordlab_colouring_from_tables(const char* tables_text, uint32_t threshold,
                                           ordlab_colouring** out) {
  if (!tables_text || !out) return fail(ORDLAB_E_USAGE, "null argument");
  return guarded([&] {
    *out = new ordlab_colouring{synthesize_canonical(parse_tables(tables_text), threshold)};
  });
}

ordlab_status ordlab_colouring_restrict(const ordlab_colouring* base,
                                        const ordlab_ordinal* bound,
                                        ordlab_colouring** out) {
  if (!base || !bound || !out) return fail(ORDLAB_E_USAGE, "null argument");
  return guarded([&] { *out = new ordlab_colouring{base->value.restricted(bound->value)}; });
}

void ordlab_colouring_free(ordlab_colouring* c) { delete c; }

const char* ordlab_colouring_name(const ordlab_colouring* c) {
  return c ? c->value.name().c_str() : "";
}

const char* ordlab_colouring_provenance(const ordlab_colouring* c) {
  return c ? provenance_name(c->value.provenance()) : "";
}

ordlab_status ordlab_colour(const ordlab_colouring* c, const ordlab_ordinal* a,
                            const ordlab_ordinal* b, int* out) {
  if (!c || !a || !b || !out) return fail(ORDLAB_E_USAGE, "null argument");
  return guarded([&] { *out = c->value.colour(a->value, b->value); });
}

void ordlab_options_init(ordlab_options* o) {
  *o = ordlab_options{};
  o->max_exp = o->max_coeff = o->k = o->p = o->q = -1;
  o->limit_rank_max = o->deficiency = o->threshold = -1;
  o->rank = o->depth = o->fanout = -1;
}

ordlab_status ordlab_run(const char* command, const ordlab_colouring* col,
                         const ordlab_options* options, ordlab_report** out) {
  if (!command || !options || !out) return fail(ORDLAB_E_USAGE, "null argument");
  return guarded([&] {
    const auto start = std::chrono::steady_clock::now();
    auto r = std::make_unique<ordlab_report>();
    const Colouring fallback = gomega_colouring();
    run_command(command, col ? col->value : fallback, *options, *r);
    r->wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    *out = r.release();
  });
}

void ordlab_report_free(ordlab_report* r) { delete r; }

int ordlab_report_exit_code(const ordlab_report* r) { return exit_status(r->report); }

ordlab_status ordlab_report_render(ordlab_report* r, ordlab_format format,
                                   const char** text) {
  if (!r || !text) return fail(ORDLAB_E_USAGE, "null argument");
  return guarded([&] {
    const Format f = static_cast<Format>(format);
    auto it = r->rendered.find(f);
    if (it == r->rendered.end()) it = r->rendered.emplace(f, render(r->report, f)).first;
    *text = it->second.c_str();
  });
}

const char* ordlab_report_cache_keys(const ordlab_report* r) {
  return r ? r->cache_keys.c_str() : "";
}

double ordlab_report_wall_seconds(const ordlab_report* r) {
  return r ? r->wall_seconds : 0.0;
}

void ordlab_digest(const char* bytes, size_t len, char buf[17]) {
  const std::uint64_t h = fnv1a64(std::string_view(bytes, len));
  std::snprintf(buf, 17, "%016llx", static_cast<unsigned long long>(h));
}

}  // extern "C"
