#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <thread>

#include "ordlab/verify.hpp"

namespace ordlab {

namespace {

struct ChunkResult {
  std::size_t count = 0;
  std::vector<std::array<std::size_t, 3>> listed;
};

}  // namespace

TriangleReport find_triangles(const AdjacencyBitmap& bits,
                              const std::vector<Ordinal>& vertices,
                              unsigned threads, std::size_t list_limit) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = bits.size();
  if (vertices.size() != n)
    throw Error(ErrorCode::kDomain, "vertex labels do not match the bitmap");
  const std::size_t words = bits.words_per_row();

  constexpr std::size_t kChunk = 32;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<ChunkResult> results(chunks);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    std::vector<std::uint64_t> common(words);
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      ChunkResult& out = results[c];
      const std::size_t end = std::min(n, (c + 1) * kChunk);
      for (std::size_t i = c * kChunk; i < end; ++i) {
        auto ri = bits.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!bits.test(i, j)) continue;
          auto rj = bits.row(j);
          // Third vertices k > j adjacent to both.
          const std::size_t w0 = (j + 1) / 64;
          for (std::size_t w = w0; w < words; ++w) {
            std::uint64_t m = ri[w] & rj[w];
            if (w == w0) {
              const unsigned shift = static_cast<unsigned>((j + 1) % 64);
              m = shift == 0 ? m : (m & (~std::uint64_t{0} << shift));
            }
            if (!m) continue;
            out.count += static_cast<std::size_t>(std::popcount(m));
            while (m && out.listed.size() < list_limit) {
              const std::size_t k =
                  w * 64 + static_cast<std::size_t>(std::countr_zero(m));
              out.listed.push_back({i, j, k});
              m &= m - 1;
            }
          }
        }
      }
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

  TriangleReport report;
  report.vertices = n;
  report.edges = bits.edge_count();
  report.list_limit = list_limit;
  for (const ChunkResult& r : results) {
    report.triangle_count += r.count;
    for (const auto& [i, j, k] : r.listed) {
      if (report.triangles.size() >= list_limit) break;
      if (!(bits.test(i, j) && bits.test(j, k) && bits.test(i, k)))
        throw Error(ErrorCode::kCorrupt, "listed triangle is not a triangle");
      report.triangles.push_back({vertices[i], vertices[j], vertices[k]});
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace ordlab
