#include <doctest.h>

#include <random>
#include <sstream>

#include "dbe/metric.hpp"
#include "dbe/one_two.hpp"
#include "dbe/rational.hpp"

using namespace dbe;

namespace {

DistanceMatrix table(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  DistanceMatrix m(rows.size());
  PointId i = 0;
  for (const auto& row : rows) {
    PointId j = 0;
    for (auto v : row) m.at(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("rational parsing is exact") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("1.5") == Rational(3, 2));
  CHECK(Rational::parse("1.25") == Rational(5, 4));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse("0.1") + Rational::parse("0.2") == Rational::parse("0.3"));
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("1e3"));
}

TEST_CASE("rational arithmetic and printing") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(3, 2).str() == "3/2");
  CHECK(Rational(4).str() == "4");
  CHECK(Rational(4).fraction_str() == "4/1");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK_THROWS_AS(Rational(INT64_MAX) + Rational(1), std::overflow_error);
}

TEST_CASE("matrix parsing") {
  SUBCASE("path space") {
    const auto m = parse_distance_matrix("3\n0 1 2\n1 0 1\n2 1 0\n");
    REQUIRE(m.size() == 3);
    CHECK(m.at(0, 2) == Rational(2));
    CHECK(m.at(1, 2) == Rational(1));
  }
  SUBCASE("two points") {
    const auto m = parse_distance_matrix("2\n0 1\n1 0\n");
    CHECK(m.size() == 2);
    CHECK(m.at(0, 1) == Rational(1));
  }
  SUBCASE("comments and fractions") {
    const auto m = parse_distance_matrix("# header\n2\n  # inside\n0 3/2\n1.5 0\n");
    CHECK(m.at(0, 1) == Rational(3, 2));
    CHECK(m.at(1, 0) == Rational(3, 2));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_distance_matrix("3\n0 1\n1 0 1\n1 1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_distance_matrix("2\n0 -1\n-1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_distance_matrix("2\n0 x\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_distance_matrix("3\n0 1 1\n1 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_distance_matrix(""), ParseError);
  }
  SUBCASE("error names the line") {
    try {
      parse_distance_matrix("3\n0 1\n1 0 1\n1 1 0\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
}

TEST_CASE("metric validation") {
  CHECK_NOTHROW(validate_metric(table({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}})));

  try {
    validate_metric(table({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}}));
    FAIL("expected a triangle violation");
  } catch (const MetricError& e) {
    CHECK(e.axiom() == MetricAxiom::kTriangle);
    CHECK(e.i() == 0);
    CHECK(e.j() == 2);
    CHECK(e.k() == 1);
  }

  try {
    validate_metric(table({{0, 1}, {2, 0}}));
    FAIL("expected a symmetry violation");
  } catch (const MetricError& e) {
    CHECK(e.axiom() == MetricAxiom::kSymmetry);
    CHECK(e.i() == 0);
    CHECK(e.j() == 1);
  }

  CHECK_THROWS_AS(validate_metric(table({{1, 1}, {1, 0}})), MetricError);
  CHECK_THROWS_AS(validate_metric(table({{0, 0}, {0, 0}})), MetricError);
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    DistanceMatrix m(n);
    for (PointId i = 0; i < n; ++i) {
      for (PointId j = i + 1; j < n; ++j) {
        m.set_symmetric(i, j, Rational(static_cast<std::int64_t>(1 + rng() % 40), static_cast<std::int64_t>(1 + rng() % 12)));
      }
    }
    const std::string text = serialize_matrix(m);
    const DistanceMatrix back = parse_distance_matrix(text);
    CHECK(back == m);
    CHECK(serialize_matrix(back) == text);
  }
}

TEST_CASE("as_one_two") {
  const auto path = as_one_two(validate_metric(table({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}})));
  CHECK(path.near(0) == 0b010);
  CHECK(path.near(1) == 0b101);
  CHECK(path.near(2) == 0b010);

  const auto ones = as_one_two(OneTwoSpace::all_ones(4).to_metric());
  for (PointId p = 0; p < 4; ++p) CHECK(ones.near(p) == (0b1111 & ~bit(p)));

  DistanceMatrix frac(2);
  frac.set_symmetric(0, 1, Rational(3, 2));
  try {
    as_one_two(validate_metric(frac));
    FAIL("expected a range violation");
  } catch (const MetricError& e) {
    CHECK(e.axiom() == MetricAxiom::kOneTwoRange);
  }
}

TEST_CASE("label codes") {
  CHECK(space_from_code({4, 0}) == OneTwoSpace::all_ones(4));
  CHECK(space_from_code({3, 0b111}) == OneTwoSpace::all_twos(3));

  const auto s = space_from_code({3, 0b010});
  CHECK(s.distance(0, 2) == 2);
  CHECK(s.distance(0, 1) == 1);
  CHECK(s.distance(1, 2) == 1);

  CHECK(code_from_space(OneTwoSpace::all_ones(5)).value == 0);
  CHECK(code_from_space(OneTwoSpace::all_twos(3)).value == 7);
  CHECK(code_from_space(s).value == 2);

  CHECK(pair_index(0, 1, 5) == 0);
  CHECK(pair_index(0, 4, 5) == 3);
  CHECK(pair_index(1, 2, 5) == 4);
  CHECK(pair_index(3, 4, 5) == 9);

  CHECK_THROWS_AS(space_from_code({3, 8}), std::out_of_range);
  CHECK_THROWS_AS(space_from_code({12, 0}), std::out_of_range);
}

TEST_CASE("code round trip and every code is a metric") {
  std::mt19937_64 rng(2024);
  for (std::size_t n = 1; n <= 8; ++n) {
    const std::uint64_t limit = LabelCode{n, 0}.limit();
    for (int trial = 0; trial < 1000; ++trial) {
      const LabelCode code{n, rng() % limit};
      const OneTwoSpace s = space_from_code(code);
      REQUIRE(code_from_space(s) == code);
      if (trial < 100) CHECK_NOTHROW(validate_metric(s.to_matrix()));
    }
  }
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::uint64_t c = 0; c < LabelCode{n, 0}.limit(); ++c) {
      REQUIRE_NOTHROW(validate_metric(space_from_code({n, c}).to_matrix()));
    }
  }
}

TEST_CASE("one-two space construction") {
  CHECK_THROWS(OneTwoSpace(2, {0b10, 0b00}));  // not symmetric
  CHECK_THROWS(OneTwoSpace(2, {0b01, 0b00}));  // self loop
  OneTwoSpace s = OneTwoSpace::all_ones(4);
  s.set_distance(1, 3, 2);
  CHECK(s.distance(3, 1) == 2);
  CHECK(code_from_space(s).value == (std::uint64_t{1} << pair_index(1, 3, 4)));
  const std::vector<std::size_t> perm{3, 2, 1, 0};
  const auto r = s.relabeled(perm);
  CHECK(r.distance(2, 0) == 2);
  CHECK(r.distance(1, 3) == 1);
}
