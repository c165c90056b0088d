#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace dbe {

// Single-word point mask used by the 1-2 fast paths. Bit p is point p.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxFastPoints = 64;

constexpr Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
constexpr Mask bit(std::size_t p) { return Mask{1} << p; }

// Subset of [0, n) for an arbitrary n. This is what a line is.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe) : n_(universe), words_((universe + 63) / 64) {}

  static PointSet from_mask(std::size_t universe, Mask mask);
  static PointSet full(std::size_t universe);

  [[nodiscard]] std::size_t universe() const { return n_; }
  [[nodiscard]] bool contains(std::size_t p) const { return (words_[p / 64] >> (p % 64)) & 1U; }
  void insert(std::size_t p) { words_[p / 64] |= Mask{1} << (p % 64); }
  void erase(std::size_t p) { words_[p / 64] &= ~(Mask{1} << (p % 64)); }

  [[nodiscard]] std::size_t count() const;
  [[nodiscard]] bool is_full() const { return count() == n_; }
  [[nodiscard]] bool empty() const { return count() == 0; }
  // Sorted member indices.
  [[nodiscard]] std::vector<std::size_t> indices() const;
  // Requires universe() <= 64.
  [[nodiscard]] Mask to_mask() const { return words_.empty() ? 0 : words_[0]; }
  [[nodiscard]] const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;
  friend auto operator<=>(const PointSet&, const PointSet&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const noexcept {
    std::size_t h = std::hash<std::size_t>{}(s.universe());
    for (auto w : s.words()) h = h * 0x9E3779B97F4A7C15ULL ^ std::hash<std::uint64_t>{}(w);
    return h;
  }
};

}  // namespace dbe
