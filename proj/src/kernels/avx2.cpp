// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>
#include <utility>

#include "dbe/kernels.hpp"
#include "small_tables.hpp"

namespace dbe::kernels::avx2 {

namespace {

__m256i load(const std::array<std::uint8_t, kSmallLineSlots>& a) {
  return _mm256_load_si256(reinterpret_cast<const __m256i*>(a.data()));
}

// Lane k of the result is lane k - S of v, zero filled.
template <int S>
__m256i shift_up(__m256i v) {
  const __m256i low_to_high = _mm256_permute2x128_si256(v, v, 0x08);
  if constexpr (S < 16) {
    return _mm256_alignr_epi8(v, low_to_high, 16 - S);
  } else {
    return _mm256_slli_si256(low_to_high, S - 16);
  }
}

// Lanes equal to some earlier lane.
template <int... S>
__m256i repeated_lanes(__m256i v, std::integer_sequence<int, S...>) {
  __m256i dup = _mm256_setzero_si256();
  ((dup = _mm256_or_si256(dup, _mm256_cmpeq_epi8(v, shift_up<S + 1>(v)))), ...);
  return dup;
}

}  // namespace

void small_pair_lines(std::uint64_t packed_near, std::size_t n, SmallLines& out) {
  const auto& t = detail::kPairTables[n];
  const __m256i near = _mm256_broadcastsi128_si256(_mm_cvtsi64_si128(static_cast<long long>(packed_near)));
  const __m256i a = _mm256_shuffle_epi8(near, load(t.first));
  const __m256i b = _mm256_shuffle_epi8(near, load(t.second));
  const __m256i far = _mm256_cmpeq_epi8(_mm256_and_si256(a, load(t.second_bit)), _mm256_setzero_si256());
  const __m256i rest = _mm256_blendv_epi8(_mm256_xor_si256(a, b), _mm256_and_si256(a, b), far);
  const __m256i lines = _mm256_or_si256(rest, load(t.pair_bits));
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data()), lines);
}

SmallLineStats small_line_stats(const SmallLines& lines, std::size_t n) {
  const std::size_t pairs = n * (n - 1) / 2;
  const std::uint32_t valid = pairs >= 32 ? ~0U : (1U << pairs) - 1;
  const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lines.data()));
  // Real lines are never empty, so the zero fill of shift_up cannot match.
  const __m256i dup = repeated_lanes(v, std::make_integer_sequence<int, kSmallLineSlots - 1>{});
  const auto dup_bits = static_cast<std::uint32_t>(_mm256_movemask_epi8(dup));
  const __m256i full = _mm256_set1_epi8(static_cast<char>((1U << n) - 1));
  const auto full_bits = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, full)));

  SmallLineStats stats;
  stats.line_count = static_cast<std::uint32_t>(std::popcount(~dup_bits & valid));
  stats.has_universal = (full_bits & valid) != 0;
  return stats;
}

void wide_pair_lines(std::span<const Mask> near, std::span<Mask> out) {
  const std::size_t n = near.size();
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i zero = _mm256_setzero_si256();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Mask a_scalar = near[i];
    const __m256i a = _mm256_set1_epi64x(static_cast<long long>(a_scalar));
    const __m256i i_bit = _mm256_set1_epi64x(static_cast<long long>(bit(i)));
    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4, k += 4) {
      const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(near.data() + j));
      const auto jj = static_cast<long long>(j);
      const __m256i j_bits = _mm256_sllv_epi64(one, _mm256_set_epi64x(jj + 3, jj + 2, jj + 1, jj));
      // d(i,j) = 2 iff i is not in N(j).
      const __m256i far = _mm256_cmpeq_epi64(_mm256_and_si256(b, i_bit), zero);
      const __m256i rest = _mm256_blendv_epi8(_mm256_xor_si256(a, b), _mm256_and_si256(a, b), far);
      const __m256i lines = _mm256_or_si256(rest, _mm256_or_si256(i_bit, j_bits));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + k), lines);
    }
    for (; j < n; ++j, ++k) {
      const Mask b = near[j];
      const Mask rest = ((a_scalar >> j) & 1U) ? (a_scalar ^ b) : (a_scalar & b);
      out[k] = rest | bit(i) | bit(j);
    }
  }
}

}  // namespace dbe::kernels::avx2
