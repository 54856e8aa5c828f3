#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ordlab/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("ordlab-cli-" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " ORDLAB_CLI " " + args + " 2>/dev/null";
  Run r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int raw = ::pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string cache_flag() { return " --cache-dir " + (scratch() / "cache").string(); }

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("check-triangles --max-exp 2 --max-coeff 2" + cache_flag()).status == 0);
  const Run k3 = run("check-triangles --colouring complete --max-exp 0 --max-coeff 2" + cache_flag());
  CHECK(k3.status == 1);
  CHECK(k3.out.find("triangles: 1\n") != std::string::npos);
  CHECK(run("check-triangles --max-coeff 2" + cache_flag()).status == 2);
  CHECK(run("check-triangles --max-exp 2 --max-coeff 2 --colouring nope" + cache_flag()).status == 2);
  CHECK(run("check-triangles --max-exp 2 --max-coeff 2 --bogus" + cache_flag()).status == 2);
  CHECK(run("frobnicate" + cache_flag()).status == 2);
  CHECK(run("check-lowerbound --k 2 --max-exp 5 --max-coeff 3" + cache_flag()).status == 2);
  CHECK(run("edge --a w --b w" + cache_flag()).status == 2);
  CHECK(run("check-triangles --max-exp 2 --max-coeff 2 --tables /nonexistent" + cache_flag()).status == 2);
}

TEST_CASE("edge, enumerate, export-tree") {
  const Run e = run("edge --a \"w^2*5+3\" --b \"w^3*2\"" + cache_flag());
  CHECK(e.status == 0);
  CHECK(e.out == "E3 n=3 colour=1\n");
  CHECK(run("enumerate --max-exp 1 --max-coeff 1" + cache_flag()).out == "0\n1\nw\nw+1\n");
  CHECK(run("enumerate --max-exp 1 --max-coeff 2 --rank 1" + cache_flag()).out == "w\nw*2\n");
  const Run csv = run("enumerate --max-exp 1 --max-coeff 1 --format csv" + cache_flag());
  CHECK(csv.out == "index,ordinal,cb-rank\n0,0,0\n1,1,0\n2,w,1\n3,w+1,0\n");
  const Run single = run("export-tree --root w^2 --depth 0" + cache_flag());
  CHECK(single.out == "digraph tree {\n  n0 [label=\"w^2\"];\n}\n");
  const Run text = run("export-tree --root w --depth 1 --fanout 2 --format text" + cache_flag());
  CHECK(text.out == "w\n  1\n  2\n");
  CHECK(run("export-tree --root w --depth 2" + cache_flag()).status == 2);
}

TEST_CASE("reports are reproducible and carry their status") {
  const std::string args = "check-lowerbound --k 1 --max-exp 5 --max-coeff 2" + cache_flag();
  const Run cold = run(args + " --threads 1");
  const Run warm = run(args + " --threads 4");
  CHECK(cold.status == 0);
  CHECK(cold.out == warm.out);
  CHECK(ordlab::exit_status_of(cold.out) == cold.status);

  const std::string defect = write("defect.txt", "# one flipped subfan edge\nw^4*2 w^5\n");
  const Run bad = run(args + " --edges " + defect);
  CHECK(bad.status == 1);
  CHECK(bad.out.find("counterexample: a:subfan-adjacent w^4*2, w^5\n") != std::string::npos);
  CHECK(ordlab::exit_status_of(bad.out) == 1);
  const Run bad_csv = run(args + " --edges " + defect + " --format csv");
  CHECK(ordlab::exit_status_of(bad_csv.out) == 1);
}

TEST_CASE("manifests record the digest of the report") {
  const fs::path dir = scratch() / "manifest";
  const Run r = run("check-triangles --max-exp 2 --max-coeff 2 --cache-dir " + dir.string());
  std::ifstream in(dir / "manifests.jsonl");
  std::string line, last;
  while (std::getline(in, line)) last = line;
  REQUIRE_FALSE(last.empty());
  const auto j = nlohmann::json::parse(last);
  CHECK(j["command"] == "check-triangles");
  CHECK(j["colouring"] == "gomega");
  CHECK(j["parameters"]["max-exp"] == 2);
  CHECK(j["exit-status"] == 0);
  CHECK(j["wall-seconds"].is_number());
  CHECK(j["digest"] == [&] {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(ordlab::fnv1a64(std::string_view(r.out))));
    return std::string(buf);
  }());
  CHECK(std::string(j["cache-keys"]).find(".adj") != std::string::npos);
  CHECK(r.out.find("wall") == std::string::npos);
}

TEST_CASE("cache directory from the environment, and corrupt entries") {
  const fs::path dir = scratch() / "env-cache";
  const std::string env = "ORDLAB_CACHE_DIR=" + dir.string();
  const Run first = run("check-triangles --max-exp 3 --max-coeff 2", env);
  CHECK(first.status == 0);
  std::size_t entries = 0;
  fs::path entry;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".adj") {
      ++entries;
      entry = e.path();
    }
  REQUIRE(entries == 1);
  std::ofstream(entry, std::ios::binary | std::ios::trunc) << "garbage";
  const Run again = run("check-triangles --max-exp 3 --max-coeff 2", env);
  CHECK(again.status == 0);
  CHECK(again.out == first.out);
  CHECK(fs::file_size(entry) > 100);

  // The flag wins over the environment.
  const fs::path other = scratch() / "flag-cache";
  run("check-triangles --max-exp 2 --max-coeff 1 --cache-dir " + other.string(), env);
  CHECK(fs::exists(other / "manifests.jsonl"));
}

TEST_CASE("table files drive the canonical colouring") {
  const std::string tables = write("t.txt", "k 2\ndomcolor 0 0 1\n");
  const Run r = run("extract-tables --colouring canonical --tables " + tables +
                    " --max-exp 1 --max-coeff 6" + cache_flag());
  CHECK(r.status == 0);
  CHECK(r.out.find("domcolor: 0 0 1\n") != std::string::npos);
  CHECK(r.out.find("domcolor: 1 1 0\n") != std::string::npos);
  const Run paper = run("extract-tables --colouring paper-example --max-exp 1 --max-coeff 6" + cache_flag());
  CHECK(paper.out.find("descolor: 1 0 0\n") != std::string::npos);
  CHECK(paper.out.find("scarcity-violations: 0\n") != std::string::npos);
}

TEST_CASE("extract-upper reports a stage") {
  const std::string tables = write("zero6.txt", "k 6\n");
  const Run r = run("extract-upper --colouring empty --tables " + tables +
                    " --max-exp 5 --max-coeff 4" + cache_flag());
  CHECK(r.status == 0);
  CHECK(r.out.find("found: yes\n") != std::string::npos);
  CHECK(r.out.find("stage: 4") != std::string::npos);
  const Run w = run("search-witness --colouring paper-example --max-exp 1 --max-coeff 6 --p 2 --q 3" +
                    cache_flag());
  CHECK(w.status == 0);
  CHECK(w.out.find("limits: ") != std::string::npos);
}
