#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dbe/rational.hpp"

namespace dbe {

using PointId = std::size_t;

// Raw n x n table of exact distances as read from a file. Carries no metric
// guarantees beyond nonnegativity; see validate_metric().
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  // Zero matrix on n points.
  explicit DistanceMatrix(std::size_t n);
  DistanceMatrix(std::size_t n, std::vector<Rational> row_major);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] const Rational& at(PointId i, PointId j) const { return d_[i * n_ + j]; }
  Rational& at(PointId i, PointId j) { return d_[i * n_ + j]; }
  // Sets d(i,j) and d(j,i).
  void set_symmetric(PointId i, PointId j, const Rational& value);

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> d_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class MetricAxiom { kZeroDiagonal, kSymmetry, kPositivity, kTriangle, kOneTwoRange };

// A metric axiom violation with its witness. For kTriangle the triple is
// (i, j, k) with d(i,k) > d(i,j) + d(j,k); the other axioms use (i, j) and
// leave k equal to i.
class MetricError : public std::runtime_error {
 public:
  MetricError(MetricAxiom axiom, PointId i, PointId j, PointId k, const std::string& what)
      : std::runtime_error(what), axiom_(axiom), i_(i), j_(j), k_(k) {}
  [[nodiscard]] MetricAxiom axiom() const { return axiom_; }
  [[nodiscard]] PointId i() const { return i_; }
  [[nodiscard]] PointId j() const { return j_; }
  [[nodiscard]] PointId k() const { return k_; }

 private:
  MetricAxiom axiom_;
  PointId i_, j_, k_;
};

// A distance matrix that satisfies all metric axioms. Only obtainable through
// validate_metric().
class MetricSpace {
 public:
  [[nodiscard]] std::size_t size() const { return matrix_.size(); }
  [[nodiscard]] const Rational& distance(PointId i, PointId j) const { return matrix_.at(i, j); }
  [[nodiscard]] const DistanceMatrix& matrix() const { return matrix_; }

  friend MetricSpace validate_metric(DistanceMatrix matrix);

 private:
  explicit MetricSpace(DistanceMatrix m) : matrix_(std::move(m)) {}
  DistanceMatrix matrix_;
};

// Matrix file format: first non-comment line is n, then n rows of n entries.
// Entries are integers, decimals ("1.5") or fractions ("3/2"). Lines whose
// first non-blank character is '#' are skipped.
DistanceMatrix parse_distance_matrix(std::istream& in);
DistanceMatrix parse_distance_matrix(std::string_view text);

// Inverse of parse_distance_matrix for valid files.
std::string serialize_matrix(const DistanceMatrix& matrix);

// Throws MetricError naming the first violated axiom and its witness.
MetricSpace validate_metric(DistanceMatrix matrix);

}  // namespace dbe
