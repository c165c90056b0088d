#include "dbe/one_two.hpp"

#include <stdexcept>
#include <string>

namespace dbe {

std::uint64_t LabelCode::limit() const {
  const std::size_t bits = pair_count(n);
  if (n > kMaxCodePoints) throw std::out_of_range("label codes support at most 11 points");
  return bits == 64 ? 0 : std::uint64_t{1} << bits;
}

OneTwoSpace::OneTwoSpace(std::size_t n, std::vector<Mask> near) : n_(n), near_(std::move(near)) {
  if (n_ > kMaxFastPoints) throw std::invalid_argument("1-2 spaces support at most 64 points");
  if (near_.size() != n_) throw std::invalid_argument("need one neighbourhood per point");
  for (PointId p = 0; p < n_; ++p) {
    if ((near_[p] & ~full_mask(n_)) != 0) throw std::invalid_argument("neighbourhood outside the point set");
    if ((near_[p] >> p) & 1U) throw std::invalid_argument("point " + std::to_string(p) + " is its own neighbour");
    for (PointId q = 0; q < n_; ++q) {
      if (((near_[p] >> q) & 1U) != ((near_[q] >> p) & 1U)) {
        throw std::invalid_argument("asymmetric neighbourhoods at (" + std::to_string(p) + "," + std::to_string(q) +
                                    ")");
      }
    }
  }
}

void OneTwoSpace::set_distance(PointId i, PointId j, int label) {
  if (i == j || i >= n_ || j >= n_) throw std::invalid_argument("set_distance needs two distinct points");
  if (label == 1) {
    near_[i] |= bit(j);
    near_[j] |= bit(i);
  } else if (label == 2) {
    near_[i] &= ~bit(j);
    near_[j] &= ~bit(i);
  } else {
    throw std::invalid_argument("1-2 label must be 1 or 2");
  }
}

DistanceMatrix OneTwoSpace::to_matrix() const {
  DistanceMatrix m(n_);
  for (PointId i = 0; i < n_; ++i) {
    for (PointId j = i + 1; j < n_; ++j) m.set_symmetric(i, j, Rational(distance(i, j)));
  }
  return m;
}

OneTwoSpace OneTwoSpace::relabeled(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw std::invalid_argument("permutation size mismatch");
  std::vector<Mask> out(n_, 0);
  for (PointId p = 0; p < n_; ++p) {
    for (Mask m = near_[p]; m != 0; m &= m - 1) out[perm[p]] |= bit(perm[std::countr_zero(m)]);
  }
  return OneTwoSpace(n_, std::move(out));
}

OneTwoSpace OneTwoSpace::all_ones(std::size_t n) {
  std::vector<Mask> near(n);
  for (PointId p = 0; p < n; ++p) near[p] = full_mask(n) & ~bit(p);
  return OneTwoSpace(n, std::move(near));
}

OneTwoSpace OneTwoSpace::all_twos(std::size_t n) { return OneTwoSpace(n, std::vector<Mask>(n, 0)); }

OneTwoSpace as_one_two(const MetricSpace& space) {
  const std::size_t n = space.size();
  if (n > kMaxFastPoints) throw std::invalid_argument("1-2 spaces support at most 64 points");
  std::vector<Mask> near(n, 0);
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = i + 1; j < n; ++j) {
      const Rational& d = space.distance(i, j);
      if (d == Rational(1)) {
        near[i] |= bit(j);
        near[j] |= bit(i);
      } else if (d != Rational(2)) {
        throw MetricError(MetricAxiom::kOneTwoRange, i, j, i,
                          "distance " + d.str() + " at (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is not in {1,2}");
      }
    }
  }
  return OneTwoSpace(n, std::move(near));
}

OneTwoSpace space_from_code(LabelCode code) {
  const std::size_t n = code.n;
  const std::uint64_t limit = code.limit();
  if (limit != 0 && code.value >= limit) {
    throw std::out_of_range("code " + std::to_string(code.value) + " out of range for n = " + std::to_string(n));
  }
  std::vector<Mask> near(n, 0);
  std::size_t k = 0;
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = i + 1; j < n; ++j, ++k) {
      if (((code.value >> k) & 1U) == 0) {
        near[i] |= bit(j);
        near[j] |= bit(i);
      }
    }
  }
  return OneTwoSpace(n, std::move(near));
}

LabelCode code_from_space(const OneTwoSpace& space) {
  const std::size_t n = space.size();
  if (n > kMaxCodePoints) throw std::out_of_range("label codes support at most 11 points");
  std::uint64_t value = 0;
  std::size_t k = 0;
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = i + 1; j < n; ++j, ++k) {
      if (((space.near(i) >> j) & 1U) == 0) value |= std::uint64_t{1} << k;
    }
  }
  return LabelCode{n, value};
}

}  // namespace dbe
