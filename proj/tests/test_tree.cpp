#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ordlab/colouring.hpp"
#include "ordlab/tree.hpp"
#include "support.hpp"

using namespace ordlab;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }

std::vector<Ordinal> list(std::initializer_list<const char*> xs) {
  std::vector<Ordinal> out;
  for (const char* x : xs) out.push_back(O(x));
  return out;
}

ClosedGridWitness paper_witness() {
  return {list({"w", "w*2"}), {list({"4", "5", "6"}), list({"w+1", "w+2", "w+3"})}};
}

bool has(const std::vector<WitnessViolation>& v, ViolationClass c) {
  return std::any_of(v.begin(), v.end(), [&](const auto& x) { return x.kind == c; });
}

}  // namespace

TEST_CASE("tree order by definition") {
  CHECK(tree_le(O("w^2*5+3"), O("w^2*5+3")));
  CHECK(tree_le(O("3"), O("w")));
  CHECK(tree_le(O("w+3"), O("w*2")));
  CHECK(tree_le(O("w"), O("w^2")));
  CHECK(tree_le(O("0"), O("w^3")));
  CHECK(tree_le(O("w^2+w"), O("w^3")));
  CHECK(tree_le(O("w^2+w"), O("w^2*2")));
  CHECK_FALSE(tree_le(O("w"), O("w*2")));
  CHECK_FALSE(tree_le(O("w^2"), O("w^2+w")));
  CHECK_FALSE(tree_le(O("5"), O("w*2")));
  CHECK_FALSE(tree_le(O("w^3"), O("w^2")));
}

TEST_CASE("tree order agrees with the additive definition") {
  const Truncation t(3, 2);
  const auto all = t.enumerate();
  for (const Ordinal& a : all)
    for (const Ordinal& b : all) {
      const bool expect = a == b || oracle::below(oracle::coeffs(a, 5), oracle::coeffs(b, 5));
      CHECK(tree_le(a, b) == expect);
    }
}

TEST_CASE("parent and children") {
  CHECK(parent(O("3")) == O("w"));
  CHECK(parent(O("w+3")) == O("w*2"));
  CHECK(parent(O("w^2*2+w")) == O("w^2*3"));
  CHECK(parent(O("0")) == O("w"));
  CHECK(children(O("w^3"), 3) == list({"w^2", "w^2*2", "w^2*3"}));
  CHECK(children(O("w*2"), 2) == list({"w+1", "w+2"}));
  CHECK(children(O("w"), 2) == list({"1", "2"}));
  for (const Ordinal& c : children(O("w^3*2+w^2"), 4)) CHECK(parent(c) == O("w^3*2+w^2"));
  CHECK_THROWS_AS(children(O("w+1"), 2), Error);
}

TEST_CASE("subtree slices match a brute scan") {
  const Truncation t(3, 2);
  const auto all = t.enumerate();
  for (const Ordinal& alpha : all) {
    const std::uint32_t r = alpha.is_zero() ? 0 : alpha.cb_rank();
    for (std::uint32_t l = 0; l <= r; ++l) {
      std::vector<Ordinal> expect;
      for (const Ordinal& b : all)
        if ((b.is_zero() ? 0 : b.cb_rank()) == l &&
            (b == alpha || oracle::below(oracle::coeffs(b, 5), oracle::coeffs(alpha, 5))))
          expect.push_back(b);
      CHECK(subtree_rank(alpha, l, t) == expect);
    }
  }
}

TEST_CASE("tree copies") {
  CHECK(is_tree_copy(list({"1", "2", "w"}), list({"w+1", "w+5", "w*2"})));
  TreeCopyMismatch why;
  CHECK_FALSE(is_tree_copy(list({"1", "2", "w"}), list({"1", "2", "w*2"}), &why));
  CHECK(why.first == O("1"));
  CHECK_FALSE(is_tree_copy(list({"1", "2"}), list({"1"})));
}

TEST_CASE("the hand-built witness validates") {
  const Colouring empty = empty_colouring();
  CHECK(validate_witness(paper_witness(), empty).empty());
  CHECK(validate_witness(paper_witness(), paper_example_colouring()).empty());
}

TEST_CASE("mutations are rejected by class") {
  const Colouring empty = empty_colouring();
  auto w = paper_witness();
  w.blocks[1][0] = O("w*2+1");
  CHECK(has(validate_witness(w, empty), ViolationClass::kClosure));

  w = paper_witness();
  w.blocks[1][0] = O("w");
  CHECK(has(validate_witness(w, empty), ViolationClass::kClosure));

  w = paper_witness();
  std::swap(w.blocks[0][0], w.blocks[0][1]);
  CHECK(has(validate_witness(w, empty), ViolationClass::kOrder));

  w = paper_witness();
  w.limits[0] = O("5");
  CHECK(has(validate_witness(w, empty), ViolationClass::kRank));

  CHECK(has(validate_witness(paper_witness(), complete_colouring()),
            ViolationClass::kIndependence));

  w = paper_witness();
  w.blocks.pop_back();
  CHECK(has(validate_witness(w, empty), ViolationClass::kShape));
}

TEST_CASE("witness text round-trip") {
  const auto w = paper_witness();
  const std::string s = serialize_witness(w);
  const auto back = parse_witness(s);
  CHECK(back.limits == w.limits);
  CHECK(back.blocks == w.blocks);
  CHECK_THROWS_AS(parse_witness("limits w\nblock w+1 x\n"), Error);
}
