#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ordlab/verify.hpp"
#include "support.hpp"

using namespace ordlab;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }

std::size_t naive_triangles(const Colouring& c, const std::vector<Ordinal>& v) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (!c.adjacent(v[i], v[j])) continue;
      for (std::size_t k = j + 1; k < v.size(); ++k)
        n += c.adjacent(v[i], v[k]) && c.adjacent(v[j], v[k]);
    }
  return n;
}

bool grid_ok(const Colouring& c, const Grid& rows, const Grid& g, std::size_t p, std::size_t q) {
  if (g.size() != p) return false;
  std::vector<Ordinal> flat;
  std::size_t next_row = 0;
  for (const auto& row : g) {
    if (row.size() != q || !std::is_sorted(row.begin(), row.end())) return false;
    // Each grid row lies inside a distinct source row, in source order.
    bool placed = false;
    for (; next_row < rows.size() && !placed; ++next_row)
      placed = std::all_of(row.begin(), row.end(), [&](const Ordinal& x) {
        return std::find(rows[next_row].begin(), rows[next_row].end(), x) != rows[next_row].end();
      });
    if (!placed) return false;
    flat.insert(flat.end(), row.begin(), row.end());
  }
  for (std::size_t i = 0; i < flat.size(); ++i)
    for (std::size_t j = i + 1; j < flat.size(); ++j)
      if (flat[i] == flat[j] || c.adjacent(flat[i], flat[j])) return false;
  return true;
}

Colouring five_cycle() {
  std::vector<OrdinalPair> e;
  for (std::uint32_t i = 0; i < 5; ++i)
    e.push_back({Ordinal::natural(i), Ordinal::natural((i + 1) % 5)});
  for (auto& [a, b] : e)
    if (b < a) std::swap(a, b);
  return edge_list_colouring(e, "c5");
}

}  // namespace

TEST_CASE("triangle scan agrees with the triple loop") {
  const Truncation t(2, 2);
  const auto g = adjacency(gomega_colouring(), t);
  CHECK(find_triangles(g.bits, g.vertices).triangle_count ==
        naive_triangles(gomega_colouring(), g.vertices));
  std::mt19937_64 rng(41);
  for (int i = 0; i < 8; ++i) {
    const Colouring c = oracle::random_colouring(rng(), 20 + static_cast<unsigned>(rng() % 120));
    const Truncation u(i % 2 ? 3 : 1, i % 2 ? 3 : 20);
    const auto a = adjacency(c, u);
    const TriangleReport r = find_triangles(a.bits, a.vertices, 1, 5);
    CHECK(r.triangle_count == naive_triangles(c, a.vertices));
    CHECK(r.triangles.size() == std::min<std::size_t>(5, r.triangle_count));
    for (const auto& tri : r.triangles) {
      CHECK(tri[0] < tri[1]);
      CHECK(tri[1] < tri[2]);
      CHECK(c.adjacent(tri[0], tri[1]));
      CHECK(c.adjacent(tri[1], tri[2]));
      CHECK(c.adjacent(tri[0], tri[2]));
    }
  }
}

TEST_CASE("triangle reports do not depend on the thread count") {
  const Colouring c = oracle::random_colouring(77, 40);
  const auto a = adjacency(c, Truncation(3, 4));
  const auto one = find_triangles(a.bits, a.vertices, 1, 30);
  const auto four = find_triangles(a.bits, a.vertices, 4, 30);
  CHECK(one.triangle_count == four.triangle_count);
  CHECK(one.triangles == four.triangles);
  CHECK(one.triangle_count > 0);
}

TEST_CASE("complete graph on three vertices") {
  const auto a = adjacency(complete_colouring(), Truncation(0, 2));
  const auto r = find_triangles(a.bits, a.vertices);
  CHECK(r.triangle_count == 1);
  REQUIRE(r.triangles.size() == 1);
  CHECK(r.triangles[0][2] == O("2"));
}

TEST_CASE("independent subsets") {
  const std::vector<Ordinal> s = {O("0"), O("1"), O("2"), O("3"), O("4")};
  auto e = independent_subset(empty_colouring(), s, 3);
  REQUIRE(e);
  CHECK(*e == std::vector<Ordinal>{O("0"), O("1"), O("2")});
  CHECK_FALSE(independent_subset(complete_colouring(), s, 2));
  auto c5 = independent_subset(five_cycle(), s, 2);
  REQUIRE(c5);
  CHECK_FALSE(five_cycle().adjacent((*c5)[0], (*c5)[1]));
  CHECK_FALSE(independent_subset(five_cycle(), s, 3));
  // Greedy branch above the exact threshold.
  std::vector<Ordinal> many;
  for (std::uint32_t i = 0; i < 40; ++i) many.push_back(Ordinal::natural(i));
  auto g = independent_subset(five_cycle(), many, 30, 24);
  REQUIRE(g);
  CHECK(g->size() == 30);
}

TEST_CASE("independent grids") {
  const Grid rows = {{O("1"), O("2"), O("3")}, {O("w+1"), O("w+2")}, {O("w*2+1"), O("w*2+2")}};
  auto g = search_independent_grid(empty_colouring(), rows, 2, 2);
  REQUIRE(g);
  CHECK(grid_ok(empty_colouring(), rows, *g, 2, 2));
  CHECK((*g)[0] == std::vector<Ordinal>{O("1"), O("2")});
  CHECK_FALSE(search_independent_grid(complete_colouring(), rows, 1, 2));
  CHECK_FALSE(search_independent_grid(empty_colouring(), rows, 2, 3));
  CHECK(search_independent_grid(empty_colouring(), rows, 1, 3));
}

TEST_CASE("closed witness search on small colourings") {
  const Truncation t(2, 3);
  auto w = search_closed_witness(empty_colouring(), t, 2, 3, 2);
  REQUIRE(w);
  CHECK(validate_witness(*w, empty_colouring()).empty());
  CHECK_FALSE(search_closed_witness(complete_colouring(), t, 2, 2, 2));
  auto pe = search_closed_witness(paper_example_colouring(), Truncation(1, 6), 2, 3, 1);
  REQUIRE(pe);
  CHECK(validate_witness(*pe, paper_example_colouring()).empty());
}

TEST_CASE("search soundness on random colourings") {
  std::mt19937_64 rng(53);
  const Truncation t(2, 3);
  const auto all = t.enumerate();
  std::size_t found = 0;
  for (int i = 0; i < 120; ++i) {
    const Colouring c = oracle::random_colouring(rng(), 10 + static_cast<unsigned>(rng() % 120));
    WitnessSearchOptions opts;
    opts.node_budget = 20000;
    if (auto w = search_closed_witness(c, t, 2, 2, 2, opts)) {
      ++found;
      CHECK(validate_witness(*w, c).empty());
    }
    Grid rows(4);
    for (const Ordinal& a : all) rows[a.coefficient(1)].push_back(a);
    if (auto g = search_independent_grid(c, rows, 2, 2, 20000)) CHECK(grid_ok(c, rows, *g, 2, 2));
    if (auto s = independent_subset(c, std::vector<Ordinal>(all.begin(), all.begin() + 20), 4))
      for (std::size_t x = 0; x < s->size(); ++x)
        for (std::size_t y = x + 1; y < s->size(); ++y) CHECK_FALSE(c.adjacent((*s)[x], (*s)[y]));
  }
  CHECK(found > 0);
}

TEST_CASE("dominating vertex") {
  const Grid a = {{O("1"), O("2"), O("3")}, {O("w+1"), O("w+2"), O("w+3")}};
  const std::vector<Ordinal> b = {O("w^2"), O("w^2*2")};
  // w^2*2 sees everything, w^2 only the first row.
  std::vector<OrdinalPair> e;
  for (const auto& row : a)
    for (const Ordinal& x : row) e.push_back({x, O("w^2*2")});
  for (const Ordinal& x : a[0]) e.push_back({x, O("w^2")});
  const Colouring c = edge_list_colouring(e, "dom");
  auto d = dominating_vertex(c, a, b, 2, 3);
  REQUIRE(d);
  CHECK(d->b == O("w^2*2"));
  CHECK(d->grid == a);
  auto one = dominating_vertex(c, a, b, 1, 3);
  REQUIRE(one);
  CHECK(one->b == O("w^2"));
  CHECK_FALSE(dominating_vertex(empty_colouring(), a, b, 1, 1));
}

TEST_CASE("lower-bound steps on gomega") {
  const auto r = check_lowerbound_steps(gomega_colouring(), 1, Truncation(5, 2));
  CHECK(r.all_pass());
  for (const auto& s : r.steps) CHECK(s.status != StepStatus::kFail);
  CHECK_THROWS_AS(check_lowerbound_steps(gomega_colouring(), 2, Truncation(5, 2)), Error);
  CHECK_THROWS_AS(check_lowerbound_steps(gomega_colouring(), 0, Truncation(5, 2)), Error);
}

TEST_CASE("steps (a) and (b) are the E1 and E2 rank signatures") {
  // Cross-check: (a) and (b) hold for any colouring that agrees with gomega on
  // pairs where E1 or E2 fires, whatever it does elsewhere.
  const Truncation t(5, 2);
  const Colouring g = gomega_colouring();
  const Colouring mixed("e1e2-only", Provenance::kSynthesized,
                        [](const Ordinal& lo, const Ordinal& hi) {
                          const EdgeTag tag = edge_family(lo, hi).tag;
                          return tag == EdgeTag::kE1 || tag == EdgeTag::kE2 ? 1 : 0;
                        });
  const auto r = check_lowerbound_steps(mixed, 1, t);
  CHECK(r.steps[0].status == StepStatus::kPass);
  CHECK(r.steps[1].status == StepStatus::kPass);
  const Colouring none = empty_colouring();
  const auto z = check_lowerbound_steps(none, 1, t);
  CHECK(z.steps[0].status == StepStatus::kFail);
  CHECK(z.steps[1].status == StepStatus::kFail);
  // Every pair the step checks is an E1 (a) or E2 (b) pair.
  for (const Ordinal& x : t.enumerate(5)) {
    for (const Ordinal& c : children(x, 2)) CHECK(edge_family(c, x).tag == EdgeTag::kE1);
    for (const Ordinal& y : t.enumerate(3))
      if (x < y) CHECK(edge_family(x, y).tag == EdgeTag::kE2);
  }
}

TEST_CASE("injected defects are reported with their pair") {
  const Truncation t(5, 3);
  const Colouring bad = toggle_edges(gomega_colouring(), {{O("w^4*2"), O("w^5")}}, "bad");
  const auto r = check_lowerbound_steps(bad, 1, t);
  CHECK_FALSE(r.all_pass());
  CHECK(r.steps[0].status == StepStatus::kFail);
  CHECK(r.steps[0].counterexample == std::vector<Ordinal>{O("w^4*2"), O("w^5")});
  const Colouring bad_b = toggle_edges(gomega_colouring(), {{O("w^5"), O("w^5+w^3*2")}}, "bad-b");
  const auto rb = check_lowerbound_steps(bad_b, 1, t);
  CHECK(rb.steps[1].status == StepStatus::kFail);
  CHECK(rb.steps[1].counterexample == std::vector<Ordinal>{O("w^5"), O("w^5+w^3*2")});
}

TEST_CASE("upper extraction: trivial and gated cases") {
  const Truncation t(5, 4);
  UpperOutcome e = extract_upper(empty_colouring(), t, CanonicalTables(6));
  REQUIRE(e.witness);
  CHECK(validate_witness(*e.witness, empty_colouring()).empty());
  CHECK(e.stage.rfind("4", 0) == 0);
  CHECK(e.diagnostic.empty());

  CanonicalTables bad(6);
  bad.set_domcolor(0, 1, 1);
  bad.set_domcolor(0, 2, 1);
  UpperOutcome g = extract_upper(synthesize_canonical(bad, 1), t, bad);
  CHECK(g.scarcity_violated);
  CHECK(g.stage == "scarcity");
  if (g.witness) CHECK(validate_witness(*g.witness, synthesize_canonical(bad, 1)).empty());
  else CHECK_FALSE(g.diagnostic.empty());
}

TEST_CASE("upper extraction never emits an invalid witness") {
  std::mt19937_64 rng(61);
  const Truncation t(5, 4);
  std::size_t witnesses = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const CanonicalTables tab = oracle::scarce_tables(rng, 6);
    const Colouring c = synthesize_canonical(tab, 1);
    UpperParams params;
    params.node_budget = 20000;
    const UpperOutcome o = extract_upper(c, t, tab, params);
    if (o.witness) {
      ++witnesses;
      CHECK(validate_witness(*o.witness, c).empty());
      CHECK(o.diagnostic.empty());
    } else {
      CHECK_FALSE(o.diagnostic.empty());
      CHECK_FALSE(o.stage.empty());
    }
  }
  MESSAGE("witnesses " << witnesses << " of 100");
}
