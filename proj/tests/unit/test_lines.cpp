#include <doctest.h>

#include <random>

#include "dbe/kernels.hpp"
#include "dbe/lines.hpp"
#include "dbe/one_two.hpp"

using namespace dbe;

namespace {

MetricSpace path3() { return space_from_code({3, 0b010}).to_metric(); }

PointSet set_of(std::size_t n, std::initializer_list<std::size_t> points) {
  PointSet s(n);
  for (auto p : points) s.insert(p);
  return s;
}

// Random rational metric from a random weighted graph's shortest paths.
MetricSpace random_metric(std::size_t n, std::mt19937_64& rng) {
  DistanceMatrix m(n);
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = i + 1; j < n; ++j) {
      m.set_symmetric(i, j, Rational(static_cast<std::int64_t>(1 + rng() % 6), static_cast<std::int64_t>(1 + rng() % 3)));
    }
  }
  for (PointId k = 0; k < n; ++k) {
    for (PointId i = 0; i < n; ++i) {
      for (PointId j = 0; j < n; ++j) {
        if (m.at(i, k) + m.at(k, j) < m.at(i, j)) m.at(i, j) = m.at(i, k) + m.at(k, j);
      }
    }
  }
  return validate_metric(m);
}

}  // namespace

TEST_CASE("betweenness") {
  const auto path = path3();
  CHECK(is_between(path, 0, 1, 2));
  CHECK(is_between(path, 0, 0, 2));
  CHECK_FALSE(is_between(path, 0, 2, 1));
  const auto ones = OneTwoSpace::all_ones(3).to_metric();
  CHECK_FALSE(is_between(ones, 0, 2, 1));
  CHECK(is_between(ones, 0, 0, 1));
}

TEST_CASE("line_of examples") {
  const auto path = path3();
  CHECK(line_of(path, 0, 1) == set_of(3, {0, 1, 2}));
  CHECK(line_of(path, 0, 2) == set_of(3, {0, 1, 2}));
  CHECK(line_of(OneTwoSpace::all_twos(3).to_metric(), 0, 1) == set_of(3, {0, 1}));
  CHECK_THROWS_AS(line_of(path, 1, 1), std::invalid_argument);
}

TEST_CASE("line_of_fast examples") {
  CHECK(line_of_fast(space_from_code({3, 0b010}), 0, 2) == set_of(3, {0, 1, 2}));
  CHECK(line_of_fast(OneTwoSpace::all_ones(4), 0, 1) == set_of(4, {0, 1}));
  CHECK(line_of_fast(OneTwoSpace::all_twos(3), 0, 1) == set_of(3, {0, 1}));
}

TEST_CASE("all_lines and verdict examples") {
  const auto path = all_lines(path3());
  REQUIRE(path.size() == 1);
  CHECK(path.lines[0] == set_of(3, {0, 1, 2}));
  CHECK(path.has_universal);
  for (auto idx : path.pair_to_line) CHECK(idx == 0);
  CHECK(dbe_verdict(path) == DbeVerdict{1, true, true});

  const auto ones = all_lines(OneTwoSpace::all_ones(4));
  CHECK(ones.size() == 6);
  for (const auto& l : ones.lines) CHECK(l.count() == 2);
  CHECK(dbe_verdict(OneTwoSpace::all_ones(4)) == DbeVerdict{6, false, true});

  CHECK(all_lines(OneTwoSpace::all_twos(3)).size() == 3);

  CHECK(is_universal(set_of(3, {0, 1, 2})));
  CHECK_FALSE(is_universal(set_of(4, {0, 1})));
  CHECK(is_universal(set_of(2, {0, 1})));

  CHECK(dbe_verdict(OneTwoSpace::all_ones(2)) == DbeVerdict{1, true, true});
  CHECK(dbe_verdict(OneTwoSpace::all_twos(2)) == DbeVerdict{1, true, true});
  CHECK_THROWS_AS(all_lines(OneTwoSpace::all_ones(1)), std::invalid_argument);
}

TEST_CASE("line families satisfy their invariants") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    const auto space = random_metric(n, rng);
    const LineFamily f = all_lines(space);
    for (std::size_t a = 0; a < f.size(); ++a) {
      for (std::size_t b = a + 1; b < f.size(); ++b) CHECK(f.lines[a] != f.lines[b]);
    }
    bool universal = false;
    for (const auto& l : f.lines) universal = universal || l.is_full();
    CHECK(f.has_universal == universal);
    for (PointId u = 0; u < n; ++u) {
      for (PointId v = u + 1; v < n; ++v) {
        const PointSet& l = f.line_for(u, v);
        CHECK(l.contains(u));
        CHECK(l.contains(v));
        CHECK(l == line_of(space, u, v));
        CHECK(line_of(space, v, u) == line_of(space, u, v));
      }
    }
    const DbeVerdict verdict = dbe_verdict(f);
    CHECK(verdict.holds == (verdict.line_count >= n || verdict.has_universal));
  }
}

TEST_CASE("lines are invariant under scaling") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const auto space = random_metric(n, rng);
    const Rational factor(static_cast<std::int64_t>(1 + rng() % 9), static_cast<std::int64_t>(1 + rng() % 7));
    DistanceMatrix scaled = space.matrix();
    for (PointId i = 0; i < n; ++i) {
      for (PointId j = 0; j < n; ++j) scaled.at(i, j) = scaled.at(i, j) * factor;
    }
    const auto a = all_lines(space);
    const auto b = all_lines(validate_metric(scaled));
    CHECK(a.lines == b.lines);
    CHECK(a.pair_to_line == b.pair_to_line);
  }
}

TEST_CASE("fast lines equal definitional lines on every code up to six points") {
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::uint64_t c = 0; c < LabelCode{n, 0}.limit(); ++c) {
      const OneTwoSpace s = space_from_code({n, c});
      const MetricSpace m = s.to_metric();
      for (PointId u = 0; u < n; ++u) {
        for (PointId v = u + 1; v < n; ++v) {
          if (line_of_fast(s, u, v) != line_of(m, u, v)) {
            FAIL("n=" << n << " code=" << c << " pair " << u << "," << v);
          }
        }
      }
      const LineFamily fast = all_lines(s);
      const LineFamily slow = all_lines(m);
      REQUIRE(fast.lines == slow.lines);
      REQUIRE(fast.pair_to_line == slow.pair_to_line);
      REQUIRE(fast.has_universal == slow.has_universal);
    }
  }
}

TEST_CASE("fast lines equal definitional lines on random larger spaces") {
  std::mt19937_64 rng(99);
  for (std::size_t n : {7, 8, 12, 20}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Mask> near(n, 0);
      for (PointId i = 0; i < n; ++i) {
        for (PointId j = i + 1; j < n; ++j) {
          if (rng() & 1U) {
            near[i] |= bit(j);
            near[j] |= bit(i);
          }
        }
      }
      const OneTwoSpace s(n, near);
      const MetricSpace m = s.to_metric();
      for (PointId u = 0; u < n; ++u) {
        for (PointId v = u + 1; v < n; ++v) REQUIRE(line_of_fast(s, u, v) == line_of(m, u, v));
      }
    }
  }
}

TEST_CASE("scalar and avx2 kernels agree") {
  const kernels::KernelSet* simd = kernels::avx2_kernels();
  if (simd == nullptr || !kernels::cpu_has_avx2()) {
    MESSAGE("avx2 kernels unavailable on this machine; skipped");
    return;
  }
  const kernels::KernelSet& ref = kernels::scalar_kernels();
  std::mt19937_64 rng(3);

  SUBCASE("small kernels, every code up to six points") {
    for (std::size_t n = 2; n <= 6; ++n) {
      for (std::uint64_t c = 0; c < LabelCode{n, 0}.limit(); ++c) {
        const std::uint64_t packed = kernels::small_neighbourhoods(c, n);
        kernels::SmallLines a{}, b{};
        ref.small_pair_lines(packed, n, a);
        simd->small_pair_lines(packed, n, b);
        REQUIRE(a == b);
        const auto sa = ref.small_line_stats(a, n);
        const auto sb = simd->small_line_stats(a, n);
        REQUIRE(sa.line_count == sb.line_count);
        REQUIRE(sa.has_universal == sb.has_universal);
      }
    }
  }

  SUBCASE("small kernels, random codes at seven and eight points") {
    for (std::size_t n : {7, 8}) {
      for (int trial = 0; trial < 20000; ++trial) {
        const std::uint64_t c = rng() % LabelCode{n, 0}.limit();
        const std::uint64_t packed = kernels::small_neighbourhoods(c, n);
        kernels::SmallLines a{}, b{};
        ref.small_pair_lines(packed, n, a);
        simd->small_pair_lines(packed, n, b);
        REQUIRE(a == b);
        const auto sa = ref.small_line_stats(a, n);
        const auto sb = simd->small_line_stats(a, n);
        REQUIRE(sa.line_count == sb.line_count);
        REQUIRE(sa.has_universal == sb.has_universal);
      }
    }
  }

  SUBCASE("stats kernel on arbitrary nonempty byte patterns") {
    for (int trial = 0; trial < 20000; ++trial) {
      const std::size_t n = 2 + rng() % 7;
      kernels::SmallLines lines{};
      for (std::size_t k = 0; k < pair_count(n); ++k) lines[k] = static_cast<std::uint8_t>(rng() % 4 == 0 ? 0xFF >> (8 - n) : 1 + rng() % 7);
      const auto sa = ref.small_line_stats(lines, n);
      const auto sb = simd->small_line_stats(lines, n);
      REQUIRE(sa.line_count == sb.line_count);
      REQUIRE(sa.has_universal == sb.has_universal);
    }
  }

  SUBCASE("wide kernels") {
    for (std::size_t n : {2, 3, 5, 8, 9, 17, 33, 63, 64}) {
      for (int trial = 0; trial < 50; ++trial) {
        std::vector<Mask> near(n, 0);
        for (PointId i = 0; i < n; ++i) {
          for (PointId j = i + 1; j < n; ++j) {
            if (rng() % 3 != 0) {
              near[i] |= bit(j);
              near[j] |= bit(i);
            }
          }
        }
        std::vector<Mask> a(pair_count(n)), b(pair_count(n));
        ref.wide_pair_lines(near, a);
        simd->wide_pair_lines(near, b);
        REQUIRE(a == b);
      }
    }
  }
}

TEST_CASE("small neighbourhood table matches the space") {
  std::mt19937_64 rng(17);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int trial = 0; trial < 500; ++trial) {
      const std::uint64_t c = rng() % LabelCode{n, 0}.limit();
      const std::uint64_t packed = kernels::small_neighbourhoods(c, n);
      const OneTwoSpace s = space_from_code({n, c});
      for (PointId p = 0; p < n; ++p) REQUIRE(((packed >> (8 * p)) & 0xFF) == s.near(p));
    }
  }
}

TEST_CASE("isa can be forced and reset") {
  kernels::force_isa(kernels::Isa::kScalar);
  CHECK(kernels::active().isa == kernels::Isa::kScalar);
  const DbeVerdict scalar = dbe_verdict(space_from_code({6, 12345}));
  kernels::reset_isa();
  if (kernels::cpu_has_avx2() && kernels::avx2_kernels() != nullptr) {
    CHECK(kernels::active().isa == kernels::Isa::kAvx2);
  }
  CHECK(dbe_verdict(space_from_code({6, 12345})) == scalar);
  CHECK(kernels::isa_name(kernels::Isa::kScalar) == "scalar");
}
