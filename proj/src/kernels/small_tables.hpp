#pragma once

// Per-n lookup tables shared by the small (n <= 8) kernels.

#include <array>
#include <cstddef>
#include <cstdint>

#include "dbe/kernels.hpp"

namespace dbe::kernels::detail {

struct SmallPairTable {
  std::size_t pairs = 0;
  // Padding lanes hold 0x80 so that a byte shuffle yields 0 there.
  alignas(32) std::array<std::uint8_t, kSmallLineSlots> first{};
  alignas(32) std::array<std::uint8_t, kSmallLineSlots> second{};
  alignas(32) std::array<std::uint8_t, kSmallLineSlots> pair_bits{};
  alignas(32) std::array<std::uint8_t, kSmallLineSlots> second_bit{};
};

constexpr SmallPairTable make_pair_table(std::size_t n) {
  SmallPairTable t;
  t.first.fill(0x80);
  t.second.fill(0x80);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      t.first[k] = static_cast<std::uint8_t>(i);
      t.second[k] = static_cast<std::uint8_t>(j);
      t.pair_bits[k] = static_cast<std::uint8_t>((1U << i) | (1U << j));
      t.second_bit[k] = static_cast<std::uint8_t>(1U << j);
    }
  }
  t.pairs = k;
  return t;
}

inline constexpr std::array<SmallPairTable, kMaxSmallPoints + 1> kPairTables = [] {
  std::array<SmallPairTable, kMaxSmallPoints + 1> all{};
  for (std::size_t n = 0; n <= kMaxSmallPoints; ++n) all[n] = make_pair_table(n);
  return all;
}();

}  // namespace dbe::kernels::detail
