#include "dbe/lines.hpp"

#include <stdexcept>
#include <unordered_map>

#include "dbe/kernels.hpp"

namespace dbe {

namespace {

void check_pair(std::size_t n, PointId u, PointId v) {
  if (u >= n || v >= n) throw std::out_of_range("point index out of range");
  if (u == v) throw std::invalid_argument("a line needs two distinct points");
}

// Deduplicates per-pair lines in pair order, filling the universal flag in
// the same sweep.
template <class LineAt>
LineFamily build_family(std::size_t n, LineAt&& line_at) {
  if (n < 2) throw std::invalid_argument("lines need at least 2 points");
  LineFamily family;
  family.n = n;
  family.pair_to_line.resize(pair_count(n));
  std::unordered_map<PointSet, std::size_t, PointSetHash> index;
  std::size_t k = 0;
  for (PointId u = 0; u < n; ++u) {
    for (PointId v = u + 1; v < n; ++v, ++k) {
      PointSet line = line_at(u, v, k);
      auto [it, inserted] = index.try_emplace(line, family.lines.size());
      if (inserted) {
        family.has_universal |= line.is_full();
        family.lines.push_back(std::move(line));
      }
      family.pair_to_line[k] = it->second;
    }
  }
  return family;
}

}  // namespace

bool is_between(const MetricSpace& space, PointId u, PointId p, PointId v) {
  return space.distance(u, p) + space.distance(p, v) == space.distance(u, v);
}

PointSet line_of(const MetricSpace& space, PointId u, PointId v) {
  check_pair(space.size(), u, v);
  PointSet line(space.size());
  for (PointId p = 0; p < space.size(); ++p) {
    if (is_between(space, p, u, v) || is_between(space, u, p, v) || is_between(space, u, v, p)) line.insert(p);
  }
  return line;
}

Mask line_mask(const OneTwoSpace& space, PointId u, PointId v) {
  check_pair(space.size(), u, v);
  const Mask a = space.near(u);
  const Mask b = space.near(v);
  const Mask rest = ((a >> v) & 1U) ? (a ^ b) : (a & b);
  return rest | bit(u) | bit(v);
}

PointSet line_of_fast(const OneTwoSpace& space, PointId u, PointId v) {
  return PointSet::from_mask(space.size(), line_mask(space, u, v));
}

const PointSet& LineFamily::line_for(PointId u, PointId v) const {
  check_pair(n, u, v);
  if (u > v) std::swap(u, v);
  return lines[pair_to_line[pair_index(u, v, n)]];
}

LineFamily all_lines(const MetricSpace& space) {
  return build_family(space.size(), [&](PointId u, PointId v, std::size_t) { return line_of(space, u, v); });
}

LineFamily all_lines(const OneTwoSpace& space) {
  const std::size_t n = space.size();
  std::vector<Mask> masks(pair_count(n));
  kernels::active().wide_pair_lines(space.neighbourhoods(), masks);
  return build_family(n, [&](PointId, PointId, std::size_t k) { return PointSet::from_mask(n, masks[k]); });
}

DbeVerdict dbe_verdict(const LineFamily& family) {
  DbeVerdict v;
  v.line_count = family.lines.size();
  v.has_universal = family.has_universal;
  v.holds = v.line_count >= family.n || v.has_universal;
  return v;
}

DbeVerdict dbe_verdict(const MetricSpace& space) { return dbe_verdict(all_lines(space)); }
DbeVerdict dbe_verdict(const OneTwoSpace& space) { return dbe_verdict(all_lines(space)); }

}  // namespace dbe
