#include "dbe/structure.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "dbe/kernels.hpp"

namespace dbe {

namespace {

using Endpoints = std::pair<std::uint8_t, std::uint8_t>;

const std::vector<Endpoints>& pair_endpoints(std::size_t n) {
  static const auto table = [] {
    std::array<std::vector<Endpoints>, kMaxFastPoints + 1> all;
    for (std::size_t m = 0; m <= kMaxFastPoints; ++m) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
          all[m].emplace_back(static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j));
        }
      }
    }
    return all;
  }();
  return table[n];
}

std::size_t idx(PointId a, PointId b, std::size_t n) { return a < b ? pair_index(a, b, n) : pair_index(b, a, n); }

int label_of(const LineTable& t, PointId a, PointId b) { return ((t.near[a] >> b) & 1U) ? 1 : 2; }

bool twins_in(const LineTable& t, PointId a, PointId b) {
  return ((t.near[a] >> b) & 1U) == 0 && t.near[a] == t.near[b];
}

bool has_any_twins(const LineTable& t) {
  for (PointId a = 0; a < t.n; ++a) {
    for (PointId b = a + 1; b < t.n; ++b) {
      if (twins_in(t, a, b)) return true;
    }
  }
  return false;
}

PointSet as_set(const LineTable& t, Mask m) { return PointSet::from_mask(t.n, m); }

// Sinks receive every instance whose hypothesis holds and every violation.
// The violation payload is built lazily so counting sweeps never allocate.
struct CountSink {
  StructureTally& tally;
  void instance(Law law) { ++tally.laws[static_cast<std::size_t>(law)].instances; }
  template <class Make>
  void violation(Law law, Make&&) {
    ++tally.laws[static_cast<std::size_t>(law)].violations;
  }
};

struct CollectSink {
  std::vector<Violation>& out;
  void instance(Law) {}
  template <class Make>
  void violation(Law law, Make&& make) {
    Violation v = make();
    v.law = law;
    out.push_back(std::move(v));
  }
};

template <class Sink>
void scan_distinct_lines(const LineTable& t, Sink& sink) {
  const auto& ends = pair_endpoints(t.n);
  const std::size_t pairs = ends.size();

  for (std::size_t k1 = 0; k1 < pairs; ++k1) {
    const auto [a, b] = ends[k1];
    const Mask m1 = bit(a) | bit(b);
    const int l1 = label_of(t, a, b);
    for (std::size_t k2 = k1 + 1; k2 < pairs; ++k2) {
      const auto [c, d] = ends[k2];
      if ((m1 & (bit(c) | bit(d))) != 0) continue;
      const int l2 = label_of(t, c, d);
      if (l1 == l2) continue;
      sink.instance(Law::kDistinctLabelsDistinctLines);
      if (t.lines[k1] == t.lines[k2]) {
        sink.violation(Law::kDistinctLabelsDistinctLines, [&] {
          return Violation{{}, {a, b, c, d}, {l1, l2}, {as_set(t, t.lines[k1]), as_set(t, t.lines[k2])}};
        });
      }
    }
  }

  for (PointId mid = 0; mid < t.n; ++mid) {
    for (PointId x = 0; x < t.n; ++x) {
      if (x == mid) continue;
      for (PointId y = x + 1; y < t.n; ++y) {
        if (y == mid) continue;
        const int l1 = label_of(t, x, mid);
        if (l1 != label_of(t, mid, y)) continue;
        const Law law = l1 == 2 ? Law::kTwoTwoDistinctLines : Law::kOneOneDistinctLines;
        if (l1 == 1 && twins_in(t, x, y)) continue;
        sink.instance(law);
        const Mask lx = t.lines[idx(x, mid, t.n)];
        const Mask ly = t.lines[idx(mid, y, t.n)];
        if (lx == ly) {
          sink.violation(law, [&] { return Violation{{}, {x, mid, y}, {l1, l1}, {as_set(t, lx), as_set(t, ly)}}; });
        }
      }
    }
  }
}

template <class Sink>
void scan_twin_laws(const LineTable& t, Sink& sink) {
  for (PointId u = 0; u < t.n; ++u) {
    for (PointId v = u + 1; v < t.n; ++v) {
      if (!twins_in(t, u, v)) continue;
      const Mask uv = bit(u) | bit(v);

      for (PointId x = 0; x < t.n; ++x) {
        if (x == u || x == v) continue;
        for (PointId y = x + 1; y < t.n; ++y) {
          if (y == u || y == v) continue;
          sink.instance(Law::kTwinLawBothOrNeither);
          const Mask line = t.lines[idx(x, y, t.n)];
          const Mask hit = line & uv;
          if (hit != 0 && hit != uv) {
            sink.violation(Law::kTwinLawBothOrNeither, [&] { return Violation{{}, {u, v, x, y}, {}, {as_set(t, line)}}; });
          }
        }
      }

      for (PointId w = 0; w < t.n; ++w) {
        if (w == u || w == v) continue;
        const Mask wv = t.lines[idx(w, v, t.n)];
        const Mask wu = t.lines[idx(w, u, t.n)];
        const int label = label_of(t, w, v);
        bool ok = false;
        Law law{};
        if (label == 1) {
          law = Law::kTwinLawNearHoldsBoth;
          ok = (wv & uv) == uv && (wu & uv) == uv;
        } else {
          law = Law::kTwinLawFarSeparates;
          ok = (wv & uv) == bit(v) && (wu & uv) == bit(u);
        }
        sink.instance(law);
        if (!ok) {
          sink.violation(law, [&] { return Violation{{}, {u, v, w}, {label}, {as_set(t, wv), as_set(t, wu)}}; });
        }
      }
    }
  }
}

// Groups pairs by line and runs the per-class laws. shapes may be null.
template <class Sink>
void scan_classes(const LineTable& t, bool has_twins, bool has_universal, Sink& sink,
                  std::vector<std::pair<Mask, std::uint32_t>>& order, std::vector<EdgePair>& edges,
                  std::array<std::uint64_t, kShapeCount>* shapes) {
  const auto& ends = pair_endpoints(t.n);
  const Mask all = full_mask(t.n);
  const std::size_t bound = class_size_bound(t.n);

  order.clear();
  for (std::size_t k = 0; k < ends.size(); ++k) order.emplace_back(t.lines[k], static_cast<std::uint32_t>(k));
  std::sort(order.begin(), order.end());

  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin;
    edges.clear();
    Mask cover = 0;
    while (end < order.size() && order[end].first == order[begin].first) {
      const auto [a, b] = ends[order[end].second];
      edges.push_back(EdgePair{a, b, label_of(t, a, b)});
      cover |= bit(a) | bit(b);
      ++end;
    }
    const Mask line = order[begin].first;
    const ClassShape shape = classify_edges(edges);
    if (shapes != nullptr) ++(*shapes)[static_cast<std::size_t>(shape)];

    auto witness = [&] {
      Violation v{};
      for (const auto& e : edges) {
        v.points.push_back(e.u);
        v.points.push_back(e.v);
        v.labels.push_back(e.label);
      }
      v.lines.push_back(as_set(t, line));
      return v;
    };

    if (cover == all) {
      sink.instance(Law::kFullCoverUniversal);
      if (line != all) sink.violation(Law::kFullCoverUniversal, witness);
    }
    if (!has_twins) {
      sink.instance(Law::kTwinFreeShape);
      if (shape == ClassShape::kOther) sink.violation(Law::kTwinFreeShape, witness);
      if (!has_universal) {
        sink.instance(Law::kClassSizeBound);
        if (edges.size() > bound) sink.violation(Law::kClassSizeBound, witness);
      }
    }
    begin = end;
  }
}

struct OwnedTable {
  std::vector<Mask> lines;
  LineTable view;
  bool has_universal = false;

  explicit OwnedTable(const OneTwoSpace& space) : lines(pair_count(space.size())) {
    kernels::active().wide_pair_lines(space.neighbourhoods(), lines);
    view = LineTable{space.size(), space.neighbourhoods(), lines};
    for (Mask m : lines) has_universal |= m == space.all_points();
  }
};

std::vector<Violation> only(std::vector<Violation> all, std::initializer_list<Law> laws) {
  std::erase_if(all, [&](const Violation& v) { return std::find(laws.begin(), laws.end(), v.law) == laws.end(); });
  return all;
}

std::vector<Violation> collect_classes(const OwnedTable& table, bool has_twins) {
  std::vector<Violation> out;
  CollectSink sink{out};
  std::vector<std::pair<Mask, std::uint32_t>> order;
  std::vector<EdgePair> edges;
  scan_classes(table.view, has_twins, table.has_universal, sink, order, edges, nullptr);
  return out;
}

}  // namespace

bool are_twins(const OneTwoSpace& space, PointId u, PointId v) {
  if (u == v || u >= space.size() || v >= space.size()) throw std::invalid_argument("twins need two distinct points");
  return space.distance(u, v) == 2 && space.near(u) == space.near(v);
}

std::vector<std::pair<PointId, PointId>> twin_pairs(const OneTwoSpace& space) {
  std::vector<std::pair<PointId, PointId>> out;
  for (PointId u = 0; u < space.size(); ++u) {
    for (PointId v = u + 1; v < space.size(); ++v) {
      if (are_twins(space, u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::string_view shape_name(ClassShape shape) {
  switch (shape) {
    case ClassShape::kUniformMatching:
      return "uniform_matching";
    case ClassShape::kAltC4Subset:
      return "alt_c4_subset";
    case ClassShape::kOther:
      return "other";
  }
  return "unknown";
}

std::string_view law_name(Law law) {
  switch (law) {
    case Law::kDistinctLabelsDistinctLines:
      return "distinct_lines_disjoint_labels";
    case Law::kTwoTwoDistinctLines:
      return "distinct_lines_adjacent_two_two";
    case Law::kOneOneDistinctLines:
      return "distinct_lines_adjacent_one_one";
    case Law::kTwinLawBothOrNeither:
      return "twin_law_a_both_or_neither";
    case Law::kTwinLawNearHoldsBoth:
      return "twin_law_b_near_holds_both";
    case Law::kTwinLawFarSeparates:
      return "twin_law_c_far_separates";
    case Law::kFullCoverUniversal:
      return "full_cover_universal";
    case Law::kTwinFreeShape:
      return "twin_free_class_shape";
    case Law::kClassSizeBound:
      return "class_size_bound";
  }
  return "unknown";
}

std::size_t class_size_bound(std::size_t n) { return std::max<std::size_t>(n > 0 ? (n - 1) / 2 : 0, 4); }

std::vector<EquivClass> equiv_classes(const LineFamily& family, const OneTwoSpace& space) {
  if (family.n != space.size()) throw std::invalid_argument("line family does not belong to this space");
  std::vector<EquivClass> classes(family.lines.size());
  for (std::size_t i = 0; i < classes.size(); ++i) classes[i].line = family.lines[i];
  std::size_t k = 0;
  for (PointId u = 0; u < family.n; ++u) {
    for (PointId v = u + 1; v < family.n; ++v, ++k) {
      classes[family.pair_to_line[k]].edges.push_back(EdgePair{u, v, space.distance(u, v)});
    }
  }
  return classes;
}

ClassShape classify_edges(std::span<const EdgePair> edges) {
  bool matching = true;
  Mask used = 0;
  for (const auto& e : edges) {
    const Mask m = bit(e.u) | bit(e.v);
    if ((used & m) != 0 || e.label != edges.front().label) {
      matching = false;
      break;
    }
    used |= m;
  }
  if (matching) return ClassShape::kUniformMatching;

  if (edges.size() > 4) return ClassShape::kOther;
  Mask vertices = 0;
  for (const auto& e : edges) vertices |= bit(e.u) | bit(e.v);
  const int vertex_count = std::popcount(vertices);
  if (vertex_count > 4) return ClassShape::kOther;
  if (edges.size() == 3 && vertex_count == 3) return ClassShape::kOther;  // triangle
  for (Mask m = vertices; m != 0; m &= m - 1) {
    const auto p = static_cast<PointId>(std::countr_zero(m));
    int degree = 0;
    for (const auto& e : edges) degree += (e.u == p) + (e.v == p);
    if (degree > 2) return ClassShape::kOther;
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const bool share = edges[i].u == edges[j].u || edges[i].u == edges[j].v || edges[i].v == edges[j].u ||
                         edges[i].v == edges[j].v;
      if (share == (edges[i].label == edges[j].label)) return ClassShape::kOther;
    }
  }
  return ClassShape::kAltC4Subset;
}

ClassShape classify_class(const OneTwoSpace& space, const EquivClass& cls) {
  for (const auto& e : cls.edges) {
    if (space.distance(e.u, e.v) != e.label) throw std::invalid_argument("edge label disagrees with the space");
  }
  return classify_edges(cls.edges);
}

std::vector<Violation> check_claim_c0(const OneTwoSpace& space) {
  const OwnedTable table(space);
  std::vector<Violation> out;
  CollectSink sink{out};
  scan_distinct_lines(table.view, sink);
  return out;
}

std::vector<Violation> check_twin_line_laws(const OneTwoSpace& space) {
  const OwnedTable table(space);
  std::vector<Violation> out;
  CollectSink sink{out};
  scan_twin_laws(table.view, sink);
  return out;
}

std::vector<Violation> full_cover_class_check(const OneTwoSpace& space) {
  const OwnedTable table(space);
  return only(collect_classes(table, has_any_twins(table.view)), {Law::kFullCoverUniversal});
}

ConditionalCheck twin_free_shape_check(const OneTwoSpace& space) {
  const OwnedTable table(space);
  if (has_any_twins(table.view)) return {};
  return {true, only(collect_classes(table, false), {Law::kTwinFreeShape})};
}

ConditionalCheck class_size_bound_check(const OneTwoSpace& space) {
  const OwnedTable table(space);
  if (has_any_twins(table.view) || table.has_universal) return {};
  return {true, only(collect_classes(table, false), {Law::kClassSizeBound})};
}

void StructureTally::merge(const StructureTally& other) {
  for (std::size_t i = 0; i < kLawCount; ++i) {
    laws[i].instances += other.laws[i].instances;
    laws[i].violations += other.laws[i].violations;
  }
  for (std::size_t i = 0; i < kShapeCount; ++i) shapes[i] += other.shapes[i];
  spaces += other.spaces;
  spaces_with_twins += other.spaces_with_twins;
  spaces_twin_free_no_universal += other.spaces_twin_free_no_universal;
}

std::uint64_t StructureTally::total_violations() const {
  std::uint64_t total = 0;
  for (const auto& law : laws) total += law.violations;
  return total;
}

void StructureScanner::scan(const LineTable& table, bool has_universal, StructureTally& tally) {
  CountSink sink{tally};
  const bool has_twins = has_any_twins(table);
  ++tally.spaces;
  if (has_twins) ++tally.spaces_with_twins;
  if (!has_twins && !has_universal) ++tally.spaces_twin_free_no_universal;
  scan_distinct_lines(table, sink);
  scan_twin_laws(table, sink);
  scan_classes(table, has_twins, has_universal, sink, order_, edges_, &tally.shapes);
}

}  // namespace dbe
