#pragma once

// Structure of 1-2 spaces: twins, the edge equivalence uv ~ xy (same line),
// shapes of its classes, and checkers for the laws that must hold in every
// 1-2 space. Checkers return every violated instance with a witness; an
// empty result means the law held.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "dbe/lines.hpp"
#include "dbe/one_two.hpp"

namespace dbe {

bool are_twins(const OneTwoSpace& space, PointId u, PointId v);
// Pairs (u, v), u < v, in lexicographic order.
std::vector<std::pair<PointId, PointId>> twin_pairs(const OneTwoSpace& space);

struct EdgePair {
  PointId u = 0;
  PointId v = 0;  // u < v
  int label = 1;

  friend bool operator==(const EdgePair&, const EdgePair&) = default;
};

struct EquivClass {
  std::vector<EdgePair> edges;  // lexicographic
  PointSet line;
};

enum class ClassShape { kUniformMatching, kAltC4Subset, kOther };
inline constexpr std::size_t kShapeCount = 3;
std::string_view shape_name(ClassShape shape);

// Classes ordered by first appearance of their line over lexicographic pairs.
std::vector<EquivClass> equiv_classes(const LineFamily& family, const OneTwoSpace& space);

// kUniformMatching: pairwise vertex-disjoint edges with one label (checked
// first, so singletons land here). kAltC4Subset: the edges fit in a 4-cycle
// whose labels alternate, i.e. the edge graph is a subgraph of C4, edges that
// share a point differ in label and disjoint edges agree.
ClassShape classify_class(const OneTwoSpace& space, const EquivClass& cls);
ClassShape classify_edges(std::span<const EdgePair> edges);

enum class Law : std::uint8_t {
  kDistinctLabelsDistinctLines,  // disjoint pairs with different labels
  kTwoTwoDistinctLines,          // u1u2, u2u3 both at distance 2
  kOneOneDistinctLines,          // u1u2, u2u3 both at distance 1, u1 u3 not twins
  kTwinLawBothOrNeither,         // line xy avoiding twins u,v holds both or neither
  kTwinLawNearHoldsBoth,         // d(w,v) = 1: lines wv, wu contain u and v
  kTwinLawFarSeparates,          // d(w,v) = 2: wv holds v not u, wu holds u not v
  kFullCoverUniversal,           // class touching every point has a universal line
  kTwinFreeShape,                // twin-free: every class is a matching or alt-C4 subset
  kClassSizeBound,               // twin-free, no universal line: |class| <= max((n-1)/2, 4)
};
inline constexpr std::size_t kLawCount = 9;
std::string_view law_name(Law law);

struct Violation {
  Law law;
  std::vector<PointId> points;
  std::vector<int> labels;
  std::vector<PointSet> lines;
};

std::vector<Violation> check_claim_c0(const OneTwoSpace& space);
std::vector<Violation> check_twin_line_laws(const OneTwoSpace& space);
std::vector<Violation> full_cover_class_check(const OneTwoSpace& space);

// applicable is false when the hypothesis fails (the space has twins, or for
// the size bound a universal line); violations are then empty.
struct ConditionalCheck {
  bool applicable = false;
  std::vector<Violation> violations;
};
ConditionalCheck twin_free_shape_check(const OneTwoSpace& space);
ConditionalCheck class_size_bound_check(const OneTwoSpace& space);

std::size_t class_size_bound(std::size_t n);

// ---------------------------------------------------------------------------
// Bulk interface used by the exhaustive sweeps.

// Per-pair lines of a 1-2 space, lexicographic pair order.
struct LineTable {
  std::size_t n = 0;
  std::span<const Mask> near;
  std::span<const Mask> lines;
};

struct LawTally {
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  friend bool operator==(const LawTally&, const LawTally&) = default;
};

struct StructureTally {
  std::array<LawTally, kLawCount> laws{};
  std::array<std::uint64_t, kShapeCount> shapes{};
  std::uint64_t spaces = 0;
  std::uint64_t spaces_with_twins = 0;
  std::uint64_t spaces_twin_free_no_universal = 0;

  void merge(const StructureTally& other);
  [[nodiscard]] std::uint64_t total_violations() const;
  friend bool operator==(const StructureTally&, const StructureTally&) = default;
};

// Runs every checker on one space and adds the counts to tally. Reuses its
// buffers across calls; one instance per thread.
class StructureScanner {
 public:
  void scan(const LineTable& table, bool has_universal, StructureTally& tally);

 private:
  std::vector<std::pair<Mask, std::uint32_t>> order_;
  std::vector<EdgePair> edges_;
};

}  // namespace dbe
