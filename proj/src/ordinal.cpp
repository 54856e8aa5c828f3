#include "ordlab/ordinal.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace ordlab {

namespace {

std::uint32_t checked_add(std::uint32_t a, std::uint32_t b) {
  if (a > std::numeric_limits<std::uint32_t>::max() - b)
    throw Error(ErrorCode::kOverflow, "coefficient overflow");
  return a + b;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Ordinal parse() {
    if (text_ == "0") return Ordinal{};
    std::vector<Term> terms;
    for (;;) {
      terms.push_back(term());
      if (pos_ == text_.size()) break;
      expect('+');
    }
    for (std::size_t i = 1; i < terms.size(); ++i) {
      if (terms[i].exponent >= terms[i - 1].exponent)
        throw Error(ErrorCode::kSyntax,
                    "exponents must strictly decrease in '" +
                        std::string(text_) + "'");
    }
    return Ordinal::from_terms(std::move(terms));
  }

 private:
  Term term() {
    Term t;
    if (peek() == 'w') {
      ++pos_;
      t.exponent = 1;
      if (peek() == '^') {
        ++pos_;
        t.exponent = nat();
      }
      if (peek() == '*') {
        ++pos_;
        t.coefficient = nat();
      }
    } else {
      t.exponent = 0;
      t.coefficient = nat();
    }
    if (t.coefficient == 0)
      throw Error(ErrorCode::kSyntax,
                  "zero coefficient in '" + std::string(text_) + "'");
    return t;
  }

  std::uint32_t nat() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first == last || *first < '0' || *first > '9') fail("expected number");
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range)
      throw Error(ErrorCode::kOverflow, "number too large in '" +
                                            std::string(text_) + "'");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kSyntax, what + " at offset " +
                                        std::to_string(pos_) + " in '" +
                                        std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0)
      throw Error(ErrorCode::kRange, "zero coefficient");
    if (i > 0 && terms[i].exponent >= terms[i - 1].exponent)
      throw Error(ErrorCode::kRange, "exponents must strictly decrease");
  }
  return Ordinal(std::move(terms));
}

Ordinal Ordinal::power(std::uint32_t exponent, std::uint32_t coefficient) {
  if (coefficient == 0) return Ordinal{};
  return Ordinal({Term{exponent, coefficient}});
}

Ordinal Ordinal::natural(std::uint32_t n) { return power(0, n); }

std::uint32_t Ordinal::coefficient(std::uint32_t i) const noexcept {
  for (const Term& t : terms_)
    if (t.exponent == i) return t.coefficient;
  return 0;
}

std::uint32_t Ordinal::max_coefficient() const noexcept {
  std::uint32_t m = 0;
  for (const Term& t : terms_) m = std::max(m, t.coefficient);
  return m;
}

std::uint64_t Ordinal::coefficient_sum() const noexcept {
  std::uint64_t s = 0;
  for (const Term& t : terms_) s += t.coefficient;
  return s;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Term& x = a.terms_[i];
    const Term& y = b.terms_[i];
    if (x.exponent != y.exponent) return x.exponent <=> y.exponent;
    if (x.coefficient != y.coefficient) return x.coefficient <=> y.coefficient;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
  return a <=> b;
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const std::uint32_t lead = b.leading_exponent();
  std::vector<Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  std::uint32_t carry = 0;
  for (const Term& t : a.terms()) {
    if (t.exponent > lead)
      out.push_back(t);
    else if (t.exponent == lead)
      carry = t.coefficient;
  }
  bool first = true;
  for (Term t : b.terms()) {
    if (first) {
      t.coefficient = checked_add(t.coefficient, carry);
      first = false;
    }
    out.push_back(t);
  }
  return Ordinal::from_terms(std::move(out));
}

std::uint32_t cb_rank(const Ordinal& a) { return a.cb_rank(); }

std::uint32_t coefficient(const Ordinal& a, std::uint32_t i) {
  return a.coefficient(i);
}

Ordinal parse_ordinal(std::string_view text) { return Parser(text).parse(); }

std::string format_ordinal(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const Term& t : a.terms()) {
    if (!out.empty()) out += '+';
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent != 1) out += '^' + std::to_string(t.exponent);
    if (t.coefficient != 1) out += '*' + std::to_string(t.coefficient);
  }
  return out;
}

Truncation::Truncation(std::uint32_t max_exp, std::uint32_t max_coeff)
    : max_exp_(max_exp), max_coeff_(max_coeff), size_(1) {
  if (max_coeff == 0)
    throw Error(ErrorCode::kRange, "truncation needs max coefficient >= 1");
  const std::size_t base = std::size_t{max_coeff} + 1;
  for (std::uint32_t i = 0; i <= max_exp; ++i) {
    if (size_ > kMaxUniverse / base)
      throw Error(ErrorCode::kBudget,
                  "truncation universe too large (E=" + std::to_string(max_exp) +
                      ", C=" + std::to_string(max_coeff) + ")");
    size_ *= base;
  }
}

bool Truncation::contains(const Ordinal& a) const noexcept {
  return std::all_of(a.terms().begin(), a.terms().end(), [&](const Term& t) {
    return t.exponent <= max_exp_ && t.coefficient <= max_coeff_;
  });
}

std::optional<std::size_t> Truncation::index_of(const Ordinal& a) const noexcept {
  if (!contains(a)) return std::nullopt;
  const std::size_t base = std::size_t{max_coeff_} + 1;
  std::size_t index = 0;
  for (const Term& t : a.terms()) {
    std::size_t place = 1;
    for (std::uint32_t i = 0; i < t.exponent; ++i) place *= base;
    index += place * t.coefficient;
  }
  return index;
}

Ordinal Truncation::at(std::size_t index) const {
  if (index >= size_) throw Error(ErrorCode::kRange, "index out of universe");
  const std::size_t base = std::size_t{max_coeff_} + 1;
  std::vector<Term> terms;
  for (std::uint32_t e = 0; e <= max_exp_; ++e) {
    const auto digit = static_cast<std::uint32_t>(index % base);
    index /= base;
    if (digit != 0) terms.push_back(Term{e, digit});
  }
  std::reverse(terms.begin(), terms.end());
  return Ordinal::from_terms(std::move(terms));
}

std::vector<Ordinal> Truncation::enumerate(
    std::optional<std::uint32_t> rank_filter) const {
  std::vector<Ordinal> out;
  for (std::size_t i = 0; i < size_; ++i) {
    Ordinal a = at(i);
    if (!rank_filter || a.cb_rank() == *rank_filter) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace ordlab
