#include <bit>
#include <stdexcept>

#include "dbe/kernels.hpp"
#include "small_tables.hpp"

namespace dbe::kernels {

namespace {

// Codes are decoded 7 bits at a time: kDecode[n][chunk][bits] is the packed
// distance-2 adjacency contributed by those bits.
constexpr std::size_t kChunkBits = 7;
constexpr std::size_t kChunks = 4;

using ChunkTable = std::array<std::uint64_t, 1U << kChunkBits>;
using DecodeTable = std::array<ChunkTable, kChunks>;

constexpr DecodeTable make_decode_table(std::size_t n) {
  DecodeTable table{};
  std::array<std::size_t, kSmallLineSlots> first{}, second{};
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++pairs) {
      first[pairs] = i;
      second[pairs] = j;
    }
  }
  for (std::size_t c = 0; c < kChunks; ++c) {
    for (std::size_t bits = 0; bits < (1U << kChunkBits); ++bits) {
      std::uint64_t packed = 0;
      for (std::size_t b = 0; b < kChunkBits; ++b) {
        const std::size_t k = c * kChunkBits + b;
        if (k >= pairs || ((bits >> b) & 1U) == 0) continue;
        packed |= std::uint64_t{1} << (8 * first[k] + second[k]);
        packed |= std::uint64_t{1} << (8 * second[k] + first[k]);
      }
      table[c][bits] = packed;
    }
  }
  return table;
}

const std::array<DecodeTable, kMaxSmallPoints + 1> kDecode = [] {
  std::array<DecodeTable, kMaxSmallPoints + 1> all{};
  for (std::size_t n = 0; n <= kMaxSmallPoints; ++n) all[n] = make_decode_table(n);
  return all;
}();

// Byte p holds the other points of [0, n).
constexpr std::array<std::uint64_t, kMaxSmallPoints + 1> kCompleteNear = [] {
  std::array<std::uint64_t, kMaxSmallPoints + 1> all{};
  for (std::size_t n = 0; n <= kMaxSmallPoints; ++n) {
    std::uint64_t packed = 0;
    for (std::size_t p = 0; p < n; ++p) {
      const std::uint64_t row = ((1U << n) - 1) & ~(1U << p);
      packed |= row << (8 * p);
    }
    all[n] = packed;
  }
  return all;
}();

}  // namespace

std::uint64_t small_neighbourhoods(std::uint64_t code, std::size_t n) {
  if (n > kMaxSmallPoints) throw std::invalid_argument("small kernels support at most 8 points");
  const auto& t = kDecode[n];
  const std::uint64_t far = t[0][code & 0x7F] | t[1][(code >> 7) & 0x7F] | t[2][(code >> 14) & 0x7F] |
                            t[3][(code >> 21) & 0x7F];
  return kCompleteNear[n] & ~far;
}

namespace scalar {

void small_pair_lines(std::uint64_t packed_near, std::size_t n, SmallLines& out) {
  out.fill(0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = static_cast<std::uint8_t>(packed_near >> (8 * i));
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const auto b = static_cast<std::uint8_t>(packed_near >> (8 * j));
      const bool adjacent = (a >> j) & 1U;
      const auto rest = static_cast<std::uint8_t>(adjacent ? (a ^ b) : (a & b));
      out[k] = static_cast<std::uint8_t>(rest | (1U << i) | (1U << j));
    }
  }
}

SmallLineStats small_line_stats(const SmallLines& lines, std::size_t n) {
  const std::size_t pairs = n * (n - 1) / 2;
  const auto full = static_cast<std::uint8_t>((1U << n) - 1);
  std::array<std::uint64_t, 4> seen{};
  SmallLineStats stats;
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::uint8_t line = lines[k];
    seen[line >> 6] |= std::uint64_t{1} << (line & 63);
    stats.has_universal |= line == full;
  }
  for (auto w : seen) stats.line_count += static_cast<std::uint32_t>(std::popcount(w));
  return stats;
}

void wide_pair_lines(std::span<const Mask> near, std::span<Mask> out) {
  const std::size_t n = near.size();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Mask a = near[i];
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const Mask b = near[j];
      const Mask rest = ((a >> j) & 1U) ? (a ^ b) : (a & b);
      out[k] = rest | bit(i) | bit(j);
    }
  }
}

}  // namespace scalar

}  // namespace dbe::kernels
