#include "dbe/metric.hpp"

#include <sstream>

namespace dbe {

DistanceMatrix::DistanceMatrix(std::size_t n) : n_(n), d_(n * n) {}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<Rational> row_major) : n_(n), d_(std::move(row_major)) {
  if (d_.size() != n * n) throw std::invalid_argument("distance matrix needs n*n entries");
}

void DistanceMatrix::set_symmetric(PointId i, PointId j, const Rational& value) {
  at(i, j) = value;
  at(j, i) = value;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool is_skippable(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

}  // namespace

DistanceMatrix parse_distance_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;
  bool have_n = false;
  std::vector<Rational> entries;
  std::size_t rows = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    const auto tokens = split_ws(line);
    if (!have_n) {
      if (tokens.size() != 1) throw ParseError(line_no, "expected a single point count");
      std::int64_t value = 0;
      try {
        const Rational r = Rational::parse(tokens[0]);
        if (!r.is_integer()) throw std::invalid_argument("not an integer");
        value = r.num();
      } catch (const std::exception&) {
        throw ParseError(line_no, "point count is not an integer: '" + std::string(tokens[0]) + "'");
      }
      if (value < 1) throw ParseError(line_no, "point count must be at least 1");
      n = static_cast<std::size_t>(value);
      have_n = true;
      entries.reserve(n * n);
      continue;
    }
    if (rows == n) throw ParseError(line_no, "more than n rows");
    if (tokens.size() != n) {
      throw ParseError(line_no, "row length " + std::to_string(tokens.size()) + " != n = " + std::to_string(n));
    }
    for (auto tok : tokens) {
      Rational value;
      try {
        value = Rational::parse(tok);
      } catch (const std::exception& e) {
        throw ParseError(line_no, e.what());
      }
      if (value.sign() < 0) throw ParseError(line_no, "negative entry '" + std::string(tok) + "'");
      entries.push_back(value);
    }
    ++rows;
  }
  if (!have_n) throw ParseError(line_no, "missing point count");
  if (rows != n) throw ParseError(line_no, "expected " + std::to_string(n) + " rows, got " + std::to_string(rows));
  return DistanceMatrix(n, std::move(entries));
}

DistanceMatrix parse_distance_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_distance_matrix(in);
}

std::string serialize_matrix(const DistanceMatrix& matrix) {
  std::ostringstream out;
  out << matrix.size() << '\n';
  for (PointId i = 0; i < matrix.size(); ++i) {
    for (PointId j = 0; j < matrix.size(); ++j) {
      if (j > 0) out << ' ';
      out << matrix.at(i, j).str();
    }
    out << '\n';
  }
  return out.str();
}

MetricSpace validate_metric(DistanceMatrix matrix) {
  const std::size_t n = matrix.size();
  auto pair_str = [](PointId i, PointId j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };

  for (PointId i = 0; i < n; ++i) {
    if (matrix.at(i, i) != Rational(0)) {
      throw MetricError(MetricAxiom::kZeroDiagonal, i, i, i, "nonzero diagonal at " + pair_str(i, i));
    }
  }
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = i + 1; j < n; ++j) {
      if (matrix.at(i, j) != matrix.at(j, i)) {
        throw MetricError(MetricAxiom::kSymmetry, i, j, i,
                          "symmetry violation at " + pair_str(i, j) + ": " + matrix.at(i, j).str() +
                              " != " + matrix.at(j, i).str());
      }
      if (matrix.at(i, j).sign() <= 0) {
        throw MetricError(MetricAxiom::kPositivity, i, j, i, "zero distance between distinct points " + pair_str(i, j));
      }
    }
  }
  for (PointId i = 0; i < n; ++i) {
    for (PointId k = i + 1; k < n; ++k) {
      for (PointId j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (matrix.at(i, k) > matrix.at(i, j) + matrix.at(j, k)) {
          throw MetricError(MetricAxiom::kTriangle, i, j, k,
                            "triangle violation at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                std::to_string(k) + "): " + matrix.at(i, k).str() + " > " +
                                matrix.at(i, j).str() + "+" + matrix.at(j, k).str());
        }
      }
    }
  }
  return MetricSpace(std::move(matrix));
}

}  // namespace dbe
