#include "dbe/point_set.hpp"

#include <stdexcept>

namespace dbe {

PointSet PointSet::from_mask(std::size_t universe, Mask mask) {
  if (universe > kMaxFastPoints) throw std::invalid_argument("mask universe exceeds 64 points");
  if ((mask & ~full_mask(universe)) != 0) throw std::invalid_argument("mask has bits outside the universe");
  PointSet s(universe);
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

PointSet PointSet::full(std::size_t universe) {
  PointSet s(universe);
  for (std::size_t w = 0; w < s.words_.size(); ++w) {
    const std::size_t rest = universe - 64 * w;
    s.words_[w] = full_mask(rest);
  }
  return s;
}

std::size_t PointSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::size_t> PointSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (Mask m = words_[w]; m != 0; m &= m - 1) out.push_back(64 * w + static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

}  // namespace dbe
