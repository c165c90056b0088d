// Template body of random_rational_metric; included from verifier.hpp.

#include <random>

namespace dbe {

namespace detail {

inline constexpr std::int64_t kMaxDenominator = 16;
inline constexpr std::int64_t kMaxDistance = 4;
inline constexpr int kRepairCap = 64;

template <class Rng>
Rational random_distance(Rng& rng) {
  std::uniform_int_distribution<std::int64_t> den(1, kMaxDenominator);
  const std::int64_t q = den(rng);
  std::uniform_int_distribution<std::int64_t> num(1, kMaxDistance * q);
  return Rational(num(rng), q);
}

}  // namespace detail

template <class Rng>
DistanceMatrix random_rational_metric(std::size_t n, Rng& rng, std::uint64_t* restarts) {
  for (;;) {
    DistanceMatrix m(n);
    for (PointId i = 0; i < n; ++i) {
      for (PointId j = i + 1; j < n; ++j) m.set_symmetric(i, j, detail::random_distance(rng));
    }
    for (int repair = 0; repair <= detail::kRepairCap; ++repair) {
      bool violated = false;
      for (PointId i = 0; i < n && !violated; ++i) {
        for (PointId k = i + 1; k < n && !violated; ++k) {
          for (PointId j = 0; j < n; ++j) {
            if (j == i || j == k) continue;
            if (m.at(i, k) > m.at(i, j) + m.at(j, k)) {
              m.set_symmetric(i, k, detail::random_distance(rng));
              violated = true;
              break;
            }
          }
        }
      }
      if (!violated) return m;
    }
    if (restarts != nullptr) ++*restarts;
  }
}

}  // namespace dbe
