#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dbe/metric.hpp"
#include "dbe/point_set.hpp"

namespace dbe {

// Largest n whose C(n,2) edge labels fit in a 64-bit code.
inline constexpr std::size_t kMaxCodePoints = 11;

constexpr std::size_t pair_count(std::size_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

// Lexicographic index of the pair (i, j), i < j: (0,1) -> 0, (0,2) -> 1, ...
constexpr std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

// Labeling of the complete graph on n points: bit pair_index(i,j) is set iff
// d(i,j) = 2. Code 0 is the all-1 space.
struct LabelCode {
  std::size_t n = 0;
  std::uint64_t value = 0;

  [[nodiscard]] std::uint64_t limit() const;  // 2^C(n,2)
  friend bool operator==(const LabelCode&, const LabelCode&) = default;
};

// A metric space whose nonzero distances are all 1 or 2, stored as the
// distance-1 neighbourhood of each point. Every symmetric {1,2} labeling is
// a metric (2 <= 1 + 1), so construction never needs a triangle check.
class OneTwoSpace {
 public:
  OneTwoSpace() = default;
  // Validates symmetry, no self loops and n <= kMaxFastPoints.
  OneTwoSpace(std::size_t n, std::vector<Mask> near);

  [[nodiscard]] std::size_t size() const { return n_; }
  // Points at distance 1 from p.
  [[nodiscard]] Mask near(PointId p) const { return near_[p]; }
  [[nodiscard]] std::span<const Mask> neighbourhoods() const { return near_; }
  // 0 on the diagonal, else 1 or 2.
  [[nodiscard]] int distance(PointId i, PointId j) const {
    return i == j ? 0 : ((near_[i] >> j) & 1U) ? 1 : 2;
  }
  [[nodiscard]] Mask all_points() const { return full_mask(n_); }

  // Sets d(i,j) = d(j,i) = label (1 or 2).
  void set_distance(PointId i, PointId j, int label);

  [[nodiscard]] DistanceMatrix to_matrix() const;
  [[nodiscard]] MetricSpace to_metric() const { return validate_metric(to_matrix()); }

  // Space with points renamed by p -> perm[p].
  [[nodiscard]] OneTwoSpace relabeled(std::span<const std::size_t> perm) const;

  static OneTwoSpace all_ones(std::size_t n);
  static OneTwoSpace all_twos(std::size_t n);

  friend bool operator==(const OneTwoSpace&, const OneTwoSpace&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Mask> near_;
};

// Throws MetricError(kOneTwoRange) naming the first off-range pair.
OneTwoSpace as_one_two(const MetricSpace& space);

// Throws std::out_of_range if code >= 2^C(n,2) or n > kMaxCodePoints.
OneTwoSpace space_from_code(LabelCode code);
LabelCode code_from_space(const OneTwoSpace& space);

}  // namespace dbe
