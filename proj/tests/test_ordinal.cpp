#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ordlab/ordinal.hpp"
#include "support.hpp"

using namespace ordlab;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }

ErrorCode code_of(const char* s) {
  try {
    parse_ordinal(s);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kUsage;
}

}  // namespace

TEST_CASE("literals round-trip") {
  for (const char* s : {"0", "1", "7", "w", "w*3", "w^2", "w^2*5+3", "w^3*2+w+1",
                        "w^10*4+w^2"}) {
    CHECK(format_ordinal(O(s)) == s);
  }
  CHECK(format_ordinal(O("w^1")) == "w");
  CHECK(format_ordinal(O("w^0*4")) == "4");
  CHECK(code_of(" w^2*2+1") == ErrorCode::kSyntax);
}

TEST_CASE("malformed literals") {
  CHECK(code_of("") == ErrorCode::kSyntax);
  CHECK(code_of("w^") == ErrorCode::kSyntax);
  CHECK(code_of("w+w^2") == ErrorCode::kSyntax);
  CHECK(code_of("w+w") == ErrorCode::kSyntax);
  CHECK(code_of("w*0") == ErrorCode::kSyntax);
  CHECK(code_of("x") == ErrorCode::kSyntax);
  CHECK(code_of("99999999999999999999") == ErrorCode::kOverflow);
}

TEST_CASE("order and rank") {
  CHECK(O("0") < O("1"));
  CHECK(O("7") < O("w"));
  CHECK(O("w*9+9") < O("w^2"));
  CHECK(O("w^2+1") < O("w^2+w"));
  CHECK(O("w^2*5+3").cb_rank() == 0);
  CHECK(O("w^3*2").cb_rank() == 3);
  CHECK(O("w^3+w").cb_rank() == 1);
  CHECK(cb_rank(O("0")) == 0);
  CHECK(O("w^3*2+w*4").max_coefficient() == 4);
  CHECK(O("w^3*2+w*4").coefficient_sum() == 6);
  CHECK(O("w^3*2+w*4").coefficient(2) == 0);
}

TEST_CASE("addition absorbs lower terms") {
  CHECK(add(O("w+3"), O("w^2")) == O("w^2"));
  CHECK(add(O("w^2+3"), O("w")) == O("w^2+w"));
  CHECK(add(O("w^2*2+w"), O("w^2*3+1")) == O("w^2*5+1"));
  CHECK(add(O("5"), O("0")) == O("5"));
  CHECK(add(O("0"), O("w")) == O("w"));
  CHECK_THROWS_AS(add(O("4294967295"), O("1")), Error);
}

TEST_CASE("addition is associative on random triples") {
  std::mt19937_64 rng(11);
  const Truncation t(3, 3);
  for (int i = 0; i < 500; ++i) {
    const Ordinal a = oracle::random_ordinal(rng, t), b = oracle::random_ordinal(rng, t),
                  c = oracle::random_ordinal(rng, t);
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    CHECK(add(a, b) >= b);
  }
}

TEST_CASE("truncation index is the little-endian coefficient vector") {
  const Truncation t(2, 3);
  CHECK(t.size() == 64);
  std::vector<Ordinal> all = t.enumerate();
  REQUIRE(all.size() == 64);
  CHECK(std::is_sorted(all.begin(), all.end()));
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(t.index_of(all[i]) == i);
    const auto v = oracle::coeffs(all[i], 3);
    CHECK(v[0] + 4 * v[1] + 16 * v[2] == i);
  }
  CHECK_FALSE(t.contains(O("w^3")));
  CHECK_FALSE(t.contains(O("4")));
  CHECK(t.enumerate(1).size() == 12);
  CHECK(t.enumerate(0).size() == 1 + 3 * 16);
}

TEST_CASE("truncation budget") {
  CHECK_THROWS_AS(Truncation(40, 40), Error);
  try {
    Truncation(40, 40);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBudget);
  }
}

TEST_CASE("enumerate 1,1") {
  const Truncation t(1, 1);
  std::vector<std::string> got;
  for (const Ordinal& a : t.enumerate()) got.push_back(format_ordinal(a));
  CHECK(got == std::vector<std::string>{"0", "1", "w", "w+1"});
}
