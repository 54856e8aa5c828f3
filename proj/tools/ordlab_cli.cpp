// Command-line driver over the C interface.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "ordlab/ordlab.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitUsage = 2;

struct Flags {
  std::string colouring = "gomega";
  std::optional<std::string> bound;
  std::optional<int> max_exp, max_coeff, k, p, q, limit_rank_max, deficiency;
  int threshold = 1;
  unsigned threads = 0;
  std::optional<std::string> cache_dir;
  std::optional<std::string> format;
  std::uint64_t seed = 0;
  std::optional<std::string> tables_file, edges_file;
  std::optional<std::string> a, b, root;
  std::optional<int> rank, depth, fanout;
  bool no_manifest = false;
};

struct Failure {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check(ordlab_status s) {
  if (s != ORDLAB_OK) throw Failure{std::string(ordlab_status_name(s)) + ": " + ordlab_last_error()};
}

fs::path cache_dir(const Flags& f) {
  if (f.cache_dir) return *f.cache_dir;
  if (const char* env = std::getenv("ORDLAB_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return fs::path(xdg) / "ordlab";
  if (const char* home = std::getenv("HOME"); home && *home)
    return fs::path(home) / ".cache" / "ordlab";
  return fs::temp_directory_path() / "ordlab";
}

using ColouringPtr = std::unique_ptr<ordlab_colouring, decltype(&ordlab_colouring_free)>;

ColouringPtr make_colouring(const Flags& f, const std::optional<std::string>& tables_text) {
  ordlab_colouring* raw = nullptr;
  if (f.colouring == "canonical") {
    if (!tables_text) throw Failure{"usage: --colouring canonical needs --tables"};
    check(ordlab_colouring_from_tables(tables_text->c_str(),
                                       static_cast<std::uint32_t>(f.threshold), &raw));
  } else if (f.colouring == "edges") {
    if (!f.edges_file) throw Failure{"usage: --colouring edges needs --edges"};
    check(ordlab_colouring_from_edges(read_file(*f.edges_file).c_str(), &raw));
  } else {
    check(ordlab_colouring_builtin(f.colouring.c_str(), &raw));
    if (f.edges_file) {
      ordlab_colouring* toggled = nullptr;
      const ordlab_status s =
          ordlab_colouring_toggle(raw, read_file(*f.edges_file).c_str(), &toggled);
      ordlab_colouring_free(raw);
      check(s);
      raw = toggled;
    }
  }
  ColouringPtr col(raw, ordlab_colouring_free);
  if (f.bound) {
    ordlab_ordinal* bound = nullptr;
    check(ordlab_ordinal_parse(f.bound->c_str(), &bound));
    ordlab_colouring* clipped = nullptr;
    const ordlab_status s = ordlab_colouring_restrict(col.get(), bound, &clipped);
    ordlab_ordinal_free(bound);
    check(s);
    col.reset(clipped);
  }
  return col;
}

ordlab_format to_format(const std::string& s) {
  if (s == "text") return ORDLAB_FORMAT_TEXT;
  if (s == "csv") return ORDLAB_FORMAT_CSV;
  if (s == "dot") return ORDLAB_FORMAT_DOT;
  throw Failure{"usage: unknown --format " + s};
}

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void append_manifest(const fs::path& dir, const nlohmann::json& entry) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream out(dir / "manifests.jsonl", std::ios::app);
  if (!out) {
    std::cerr << "warning: cannot append manifest in " << dir.string() << "\n";
    return;
  }
  out << entry.dump() << "\n";
}

int run(const std::string& command, const Flags& f) {
  std::optional<std::string> tables_text;
  if (f.tables_file) tables_text = read_file(*f.tables_file);
  const bool needs_colouring = command != "enumerate" && command != "export-tree";
  ColouringPtr col(nullptr, ordlab_colouring_free);
  if (needs_colouring) col = make_colouring(f, tables_text);

  const fs::path cache = cache_dir(f);
  const std::string cache_str = cache.string();
  ordlab_options o;
  ordlab_options_init(&o);
  auto set = [](std::int32_t& dst, const std::optional<int>& v) {
    if (v) dst = *v;
  };
  set(o.max_exp, f.max_exp);
  set(o.max_coeff, f.max_coeff);
  set(o.k, f.k);
  set(o.p, f.p);
  set(o.q, f.q);
  set(o.limit_rank_max, f.limit_rank_max);
  set(o.deficiency, f.deficiency);
  set(o.rank, f.rank);
  set(o.depth, f.depth);
  set(o.fanout, f.fanout);
  o.threshold = f.threshold;
  o.threads = f.threads;
  o.seed = f.seed;
  o.cache_dir = cache_str.c_str();
  o.tables_text = tables_text ? tables_text->c_str() : nullptr;
  o.a = f.a ? f.a->c_str() : nullptr;
  o.b = f.b ? f.b->c_str() : nullptr;
  o.root = f.root ? f.root->c_str() : nullptr;

  const std::string format_name =
      f.format.value_or(command == "export-tree" ? "dot" : "text");
  const ordlab_format format = to_format(format_name);
  ordlab_report* raw = nullptr;
  check(ordlab_run(command.c_str(), col.get(), &o, &raw));
  std::unique_ptr<ordlab_report, decltype(&ordlab_report_free)> report(raw, ordlab_report_free);
  const char* text = nullptr;
  check(ordlab_report_render(report.get(), format, &text));
  std::cout << text << std::flush;
  const int status = ordlab_report_exit_code(report.get());

  if (!f.no_manifest) {
    char digest[17];
    ordlab_digest(text, std::strlen(text), digest);
    nlohmann::json params = {
        {"max-exp", f.max_exp ? nlohmann::json(*f.max_exp) : nlohmann::json(nullptr)},
        {"max-coeff", f.max_coeff ? nlohmann::json(*f.max_coeff) : nlohmann::json(nullptr)},
        {"k", f.k ? nlohmann::json(*f.k) : nlohmann::json(nullptr)},
        {"p", f.p ? nlohmann::json(*f.p) : nlohmann::json(nullptr)},
        {"q", f.q ? nlohmann::json(*f.q) : nlohmann::json(nullptr)},
        {"limit-rank-max",
         f.limit_rank_max ? nlohmann::json(*f.limit_rank_max) : nlohmann::json(nullptr)},
        {"deficiency", f.deficiency ? nlohmann::json(*f.deficiency) : nlohmann::json(nullptr)},
        {"threshold", f.threshold},
        {"threads", f.threads},
        {"seed", f.seed},
        {"format", format_name},
        {"bound", f.bound ? nlohmann::json(*f.bound) : nlohmann::json(nullptr)},
        {"tables", f.tables_file ? nlohmann::json(*f.tables_file) : nlohmann::json(nullptr)},
        {"edges", f.edges_file ? nlohmann::json(*f.edges_file) : nlohmann::json(nullptr)},
    };
    nlohmann::json entry = {
        {"command", command},
        {"parameters", params},
        {"colouring", col ? ordlab_colouring_name(col.get()) : ""},
        {"provenance", col ? ordlab_colouring_provenance(col.get()) : ""},
        {"library-version", ordlab_version()},
        {"cache-keys", ordlab_report_cache_keys(report.get())},
        {"wall-seconds", ordlab_report_wall_seconds(report.get())},
        {"timestamp", timestamp()},
        {"exit-status", status},
        {"digest", digest},
    };
    append_manifest(cache, entry);
  }
  return status;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--colouring", f.colouring,
                  "gomega, paper-example, empty, complete, canonical, edges");
  sub->add_option("--bound", f.bound, "restrict the domain below this ordinal");
  sub->add_option("--max-exp", f.max_exp, "largest CNF exponent E");
  sub->add_option("--max-coeff", f.max_coeff, "largest CNF coefficient C");
  sub->add_option("--k", f.k);
  sub->add_option("--p", f.p, "rows of a witness");
  sub->add_option("--q", f.q, "elements per row");
  sub->add_option("--limit-rank-max", f.limit_rank_max);
  sub->add_option("--deficiency", f.deficiency, "largeness deficiency d");
  sub->add_option("--threshold", f.threshold, "dominance threshold of canonical colourings");
  sub->add_option("--threads", f.threads, "worker threads (0: one per core)");
  sub->add_option("--cache-dir", f.cache_dir);
  sub->add_option("--format", f.format, "text, csv or dot (export-tree defaults to dot)");
  sub->add_option("--seed", f.seed);
  sub->add_option("--tables", f.tables_file, "canonical tables file");
  sub->add_option("--edges", f.edges_file,
                  "edge list: the colouring itself, or pairs to flip in it");
  sub->add_flag("--no-manifest", f.no_manifest, "do not append a run manifest");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordlab: finite checks on colourings of ordinals below w^w"};
  app.require_subcommand(1);
  Flags f;
  const char* commands[][2] = {
      {"check-triangles", "count triangles of a colouring over a truncation"},
      {"check-lowerbound", "check the lower-bound sub-steps"},
      {"search-witness", "search for an independent closed copy of w^2"},
      {"audit", "audit the canonicity conditions"},
      {"extract-tables", "read descolor/domcolor tables off a colouring"},
      {"extract-upper", "run the staged upper-bound extraction"},
      {"edge", "classify and colour one pair"},
      {"enumerate", "list a truncation"},
      {"export-tree", "export the tree below an ordinal"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, f);
    if (std::string(name) == "edge") {
      sub->add_option("--a", f.a)->required();
      sub->add_option("--b", f.b)->required();
    } else if (std::string(name) == "enumerate") {
      sub->add_option("--rank", f.rank, "only members of this CB rank");
    } else if (std::string(name) == "export-tree") {
      sub->add_option("--root", f.root)->required();
      sub->add_option("--depth", f.depth);
      sub->add_option("--fanout", f.fanout);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), f);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
