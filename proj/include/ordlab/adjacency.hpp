#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordlab/colouring.hpp"

namespace ordlab {

/// Symmetric bit matrix; row i is words_per_row() little-endian words.
class AdjacencyBitmap {
 public:
  AdjacencyBitmap() = default;
  explicit AdjacencyBitmap(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool test(std::size_t i, std::size_t j) const noexcept {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j) noexcept {
    bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  }

  std::span<const std::uint64_t> row(std::size_t i) const noexcept {
    return {bits_.data() + i * words_, words_};
  }
  std::span<std::uint64_t> row(std::size_t i) noexcept {
    return {bits_.data() + i * words_, words_};
  }
  const std::vector<std::uint64_t>& words() const noexcept { return bits_; }
  std::vector<std::uint64_t>& words() noexcept { return bits_; }

  std::size_t edge_count() const noexcept;

  bool operator==(const AdjacencyBitmap&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct AdjacencyOptions {
  unsigned threads = 1;
  std::size_t memory_budget = std::size_t{1} << 30;  // bytes
  std::optional<std::filesystem::path> cache_dir;
};

struct AdjacencyResult {
  std::vector<Ordinal> vertices;  // index -> ordinal, ascending
  AdjacencyBitmap bits;
  bool from_cache = false;
  std::optional<std::filesystem::path> cache_file;
};

/// Adjacency of col over the members of t's universe inside col's domain.
/// Throws Error(kBudget) when the matrix would exceed the memory budget.
AdjacencyResult adjacency(const Colouring& col, const Truncation& t,
                          const AdjacencyOptions& options = {});

/// Same, over an explicit ascending vertex list (no caching).
AdjacencyBitmap adjacency_over(const Colouring& col,
                               const std::vector<Ordinal>& vertices,
                               unsigned threads = 1);

std::uint64_t fnv1a64(std::span<const std::uint64_t> words);
std::uint64_t fnv1a64(std::string_view bytes);

std::filesystem::path cache_path(const std::filesystem::path& dir,
                                 const std::string& colouring_name,
                                 const Truncation& t);

void save_adjacency(const std::filesystem::path& file,
                    const AdjacencyBitmap& bits,
                    const std::string& colouring_name, const Truncation& t);

/// Throws Error(kCorrupt) on any header or checksum mismatch, Error(kIo) if
/// the file cannot be read.
AdjacencyBitmap load_adjacency(const std::filesystem::path& file,
                               const std::string& colouring_name,
                               const Truncation& t, std::size_t expected_n);

}  // namespace ordlab
