#pragma once

// Ordinals below w^w in Cantor normal form, and finite truncations of w^w.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ordlab {

enum class ErrorCode {
  kSyntax = 1,
  kRange,
  kOverflow,
  kLeaf,
  kDomain,
  kBudget,
  kIo,
  kCorrupt,
  kUsage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Term {
  std::uint32_t exponent = 0;
  std::uint32_t coefficient = 1;
  bool operator==(const Term&) const = default;
};

/// An ordinal w^e1*c1 + ... + w^en*cn with e1 > ... > en and every ci >= 1.
/// The empty term list is 0.
class Ordinal {
 public:
  Ordinal() = default;

  /// Validates ordering and coefficients; throws Error(kRange) otherwise.
  static Ordinal from_terms(std::vector<Term> terms);
  static Ordinal power(std::uint32_t exponent, std::uint32_t coefficient = 1);
  static Ordinal natural(std::uint32_t n);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Least exponent of the normal form; 0 for the ordinal 0.
  std::uint32_t cb_rank() const noexcept {
    return terms_.empty() ? 0 : terms_.back().exponent;
  }
  std::uint32_t leading_exponent() const noexcept {
    return terms_.empty() ? 0 : terms_.front().exponent;
  }
  /// Coefficient of w^i, 0 when absent.
  std::uint32_t coefficient(std::uint32_t i) const noexcept;
  std::uint32_t max_coefficient() const noexcept;
  std::uint64_t coefficient_sum() const noexcept;

  friend bool operator==(const Ordinal&, const Ordinal&) = default;
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  explicit Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {}
  std::vector<Term> terms_;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);

/// Ordinal sum. Terms of a below b's leading exponent are absorbed.
Ordinal add(const Ordinal& a, const Ordinal& b);

std::uint32_t cb_rank(const Ordinal& a);
std::uint32_t coefficient(const Ordinal& a, std::uint32_t i);

/// Grammar: ordinal := "0" | term ("+" term)* ;
///          term    := "w" ("^" nat)? ("*" nat)? | nat
Ordinal parse_ordinal(std::string_view text);
std::string format_ordinal(const Ordinal& a);

/// All ordinals with exponents <= max_exp and coefficients <= max_coeff.
/// Index i <-> the ordinal whose base-(max_coeff+1) little-endian digit
/// vector is i; this is monotone in ordinal order.
class Truncation {
 public:
  Truncation(std::uint32_t max_exp, std::uint32_t max_coeff);

  std::uint32_t max_exp() const noexcept { return max_exp_; }
  std::uint32_t max_coeff() const noexcept { return max_coeff_; }
  std::size_t size() const noexcept { return size_; }

  bool contains(const Ordinal& a) const noexcept;
  std::optional<std::size_t> index_of(const Ordinal& a) const noexcept;
  Ordinal at(std::size_t index) const;

  /// Ascending; optionally only members of the given CB rank.
  std::vector<Ordinal> enumerate(
      std::optional<std::uint32_t> rank_filter = std::nullopt) const;

 private:
  std::uint32_t max_exp_;
  std::uint32_t max_coeff_;
  std::size_t size_;
};

/// Largest universe accepted by Truncation (vertices).
inline constexpr std::size_t kMaxUniverse = std::size_t{1} << 26;

}  // namespace ordlab
