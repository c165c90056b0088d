#pragma once

#include <cstddef>
#include <vector>

#include "dbe/metric.hpp"
#include "dbe/one_two.hpp"
#include "dbe/point_set.hpp"

namespace dbe {

// d(u,p) + d(p,v) == d(u,v), exactly.
bool is_between(const MetricSpace& space, PointId u, PointId p, PointId v);

// The line through u and v: every p with p between u and v, u between p and
// v, or v between u and p. Throws std::invalid_argument if u == v.
PointSet line_of(const MetricSpace& space, PointId u, PointId v);

// Same set for a 1-2 space, computed from the neighbourhood masks.
Mask line_mask(const OneTwoSpace& space, PointId u, PointId v);
PointSet line_of_fast(const OneTwoSpace& space, PointId u, PointId v);

// Distinct lines of a space together with the pair -> line map that induces
// the edge equivalence.
struct LineFamily {
  std::size_t n = 0;
  std::vector<PointSet> lines;  // in order of first appearance over lexicographic pairs
  std::vector<std::size_t> pair_to_line;  // indexed by pair_index(u, v, n)
  bool has_universal = false;

  [[nodiscard]] const PointSet& line_for(PointId u, PointId v) const;
  [[nodiscard]] std::size_t size() const { return lines.size(); }
};

// Both throw std::invalid_argument if the space has fewer than 2 points.
LineFamily all_lines(const MetricSpace& space);
LineFamily all_lines(const OneTwoSpace& space);

inline bool is_universal(const PointSet& line) { return line.is_full(); }

struct DbeVerdict {
  std::size_t line_count = 0;
  bool has_universal = false;
  bool holds = false;

  friend bool operator==(const DbeVerdict&, const DbeVerdict&) = default;
};

DbeVerdict dbe_verdict(const LineFamily& family);
DbeVerdict dbe_verdict(const MetricSpace& space);
DbeVerdict dbe_verdict(const OneTwoSpace& space);

}  // namespace dbe
