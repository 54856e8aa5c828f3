#include "ordlab/adjacency.hpp"

#include <atomic>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <thread>

namespace ordlab {

namespace {

constexpr char kMagic[8] = {'O', 'R', 'D', 'L', 'A', 'D', 'J', '\0'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4] = {};
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[i]} << (8 * i);
  return v;
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8] = {};
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
  return v;
}

[[noreturn]] void corrupt(const std::filesystem::path& file,
                          const std::string& what) {
  throw Error(ErrorCode::kCorrupt,
              "adjacency cache " + file.string() + ": " + what);
}

}  // namespace

AdjacencyBitmap::AdjacencyBitmap(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

std::size_t AdjacencyBitmap::edge_count() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total / 2;
}

AdjacencyBitmap adjacency_over(const Colouring& col,
                               const std::vector<Ordinal>& vertices,
                               unsigned threads) {
  const std::size_t n = vertices.size();
  AdjacencyBitmap bits(n);
  // Each worker fills the upper triangle of the rows it claims; rows are
  // disjoint so no synchronization is needed until the transpose below.
  std::atomic<std::size_t> next{0};
  constexpr std::size_t kChunk = 16;
  auto work = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= n) return;
      const std::size_t end = std::min(n, begin + kChunk);
      for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (col.colour(vertices[i], vertices[j])) bits.set(i, j);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (bits.test(i, j)) bits.set(j, i);
  return bits;
}

AdjacencyResult adjacency(const Colouring& col, const Truncation& t,
                          const AdjacencyOptions& options) {
  AdjacencyResult result;
  result.vertices = domain_vertices(col, t);
  const std::size_t n = result.vertices.size();
  const std::size_t bytes = n * ((n + 63) / 64) * sizeof(std::uint64_t);
  if (bytes > options.memory_budget)
    throw Error(ErrorCode::kBudget,
                "adjacency for " + std::to_string(n) + " vertices needs " +
                    std::to_string(bytes) + " bytes, budget is " +
                    std::to_string(options.memory_budget));

  if (options.cache_dir) {
    const auto file = cache_path(*options.cache_dir, col.name(), t);
    result.cache_file = file;
    std::error_code ec;
    if (std::filesystem::exists(file, ec)) {
      try {
        result.bits = load_adjacency(file, col.name(), t, n);
        result.from_cache = true;
        return result;
      } catch (const Error&) {
        // Stale or damaged entry; fall through and rebuild it.
      }
    }
  }

  result.bits = adjacency_over(col, result.vertices, options.threads);
  if (options.cache_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*options.cache_dir, ec);
    save_adjacency(*result.cache_file, result.bits, col.name(), t);
  }
  return result;
}

std::uint64_t fnv1a64(std::span<const std::uint64_t> words) {
  std::uint64_t h = 14695981039346656037ull;
  for (std::uint64_t w : words) {
    for (int i = 0; i < 8; ++i) {
      h ^= (w >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::filesystem::path cache_path(const std::filesystem::path& dir,
                                 const std::string& colouring_name,
                                 const Truncation& t) {
  std::string safe;
  for (char c : colouring_name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_';
    safe += ok ? c : '_';
  }
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a64(colouring_name)));
  return dir / (safe + "-" + hash + "-E" + std::to_string(t.max_exp()) + "-C" +
                std::to_string(t.max_coeff()) + ".adj");
}

void save_adjacency(const std::filesystem::path& file,
                    const AdjacencyBitmap& bits,
                    const std::string& colouring_name, const Truncation& t) {
  // Write to a sibling temp file first so readers never see a partial entry.
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    os.write(kMagic, sizeof kMagic);
    put_u32(os, kVersion);
    put_u32(os, t.max_exp());
    put_u32(os, t.max_coeff());
    put_u32(os, static_cast<std::uint32_t>(colouring_name.size()));
    os.write(colouring_name.data(),
             static_cast<std::streamsize>(colouring_name.size()));
    put_u64(os, bits.size());
    put_u64(os, fnv1a64(bits.words()));
    for (std::uint64_t w : bits.words()) put_u64(os, w);
    if (!os) throw Error(ErrorCode::kIo, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot install " + file.string());
}

AdjacencyBitmap load_adjacency(const std::filesystem::path& file,
                               const std::string& colouring_name,
                               const Truncation& t, std::size_t expected_n) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw Error(ErrorCode::kIo, "cannot read " + file.string());
  char magic[8] = {};
  is.read(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof magic) != 0) corrupt(file, "bad magic");
  if (get_u32(is) != kVersion) corrupt(file, "version mismatch");
  if (get_u32(is) != t.max_exp() || get_u32(is) != t.max_coeff())
    corrupt(file, "truncation mismatch");
  const std::uint32_t len = get_u32(is);
  if (len != colouring_name.size()) corrupt(file, "colouring name mismatch");
  std::string name(len, '\0');
  is.read(name.data(), len);
  if (name != colouring_name) corrupt(file, "colouring name mismatch");
  const std::uint64_t n = get_u64(is);
  if (n != expected_n) corrupt(file, "vertex count mismatch");
  const std::uint64_t checksum = get_u64(is);
  AdjacencyBitmap bits(static_cast<std::size_t>(n));
  for (std::uint64_t& w : bits.words()) w = get_u64(is);
  if (!is) corrupt(file, "truncated");
  if (is.peek() != std::char_traits<char>::eof()) corrupt(file, "trailing bytes");
  if (fnv1a64(bits.words()) != checksum) corrupt(file, "checksum mismatch");
  return bits;
}

}  // namespace ordlab
