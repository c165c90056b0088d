#pragma once

// Bit-parallel line kernels for 1-2 spaces.
//
// For points u != v of a 1-2 space with distance-1 neighbourhoods N(.):
//   d(u,v) = 2:  line(u,v) = {u,v} | (N(u) & N(v))
//   d(u,v) = 1:  line(u,v) = {u,v} | (N(u) ^ N(v))
//
// Two families:
//   small: n <= 8, neighbourhoods packed one byte per point in a uint64,
//          all C(n,2) <= 28 lines land in one 32-byte block.
//   wide:  n <= 64, one Mask per point and per line.
// Each kernel has a scalar reference and an AVX2 variant; the active set is
// chosen at runtime from CPU features and can be forced for testing.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "dbe/point_set.hpp"

namespace dbe::kernels {

inline constexpr std::size_t kMaxSmallPoints = 8;
inline constexpr std::size_t kSmallLineSlots = 32;

// Byte k is the line of the k-th lexicographic pair; slots past C(n,2) are 0.
using SmallLines = std::array<std::uint8_t, kSmallLineSlots>;

struct SmallLineStats {
  std::uint32_t line_count = 0;
  bool has_universal = false;
};

// Packed distance-1 neighbourhoods (byte p = N(p)) of the space with the
// given label code. Table driven, ISA independent.
std::uint64_t small_neighbourhoods(std::uint64_t code, std::size_t n);

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
bool cpu_has_avx2();

struct KernelSet {
  Isa isa;
  void (*small_pair_lines)(std::uint64_t packed_near, std::size_t n, SmallLines& out);
  // Lines must be nonempty, which every real line is.
  SmallLineStats (*small_line_stats)(const SmallLines& lines, std::size_t n);
  // out.size() must be >= C(n,2) where n = near.size().
  void (*wide_pair_lines)(std::span<const Mask> near, std::span<Mask> out);
};

const KernelSet& scalar_kernels();
// Nullptr when AVX2 support was not compiled in.
const KernelSet* avx2_kernels();

// Best available set for this CPU unless overridden by force_isa().
const KernelSet& active();
// Throws std::runtime_error if the ISA is unavailable on this machine.
void force_isa(Isa isa);
void reset_isa();

namespace scalar {
void small_pair_lines(std::uint64_t packed_near, std::size_t n, SmallLines& out);
SmallLineStats small_line_stats(const SmallLines& lines, std::size_t n);
void wide_pair_lines(std::span<const Mask> near, std::span<Mask> out);
}  // namespace scalar

namespace avx2 {
void small_pair_lines(std::uint64_t packed_near, std::size_t n, SmallLines& out);
SmallLineStats small_line_stats(const SmallLines& lines, std::size_t n);
void wide_pair_lines(std::span<const Mask> near, std::span<Mask> out);
}  // namespace avx2

}  // namespace dbe::kernels
