#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dbe/lines.hpp"
#include "dbe/one_two.hpp"
#include "dbe/structure.hpp"

namespace dbe {

// Largest n the exhaustive sweeps and canonical labelling accept.
inline constexpr std::size_t kMaxSweepPoints = 8;

struct SweepRange {
  std::size_t n = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;  // exclusive

  // The whole code space of n points.
  static SweepRange all(std::size_t n);
  // Throws std::invalid_argument unless lo <= hi <= 2^C(n,2).
  void validate() const;
};

// Calls visitor(space, code) for each code in [lo, hi), ascending. Returns
// the number of visits.
std::uint64_t enumerate_codes(const SweepRange& range,
                              const std::function<void(const OneTwoSpace&, std::uint64_t)>& visitor);

// Minimum code over all n! relabelings. Requires n <= kMaxSweepPoints.
LabelCode canonical_code(const OneTwoSpace& space);
// code == canonical_code(space_from_code({n, code})), with early exit.
bool is_canonical(std::uint64_t code, std::size_t n);

// kSample draws uniformly random codes instead of sweeping a range.
enum class SweepMode { kAll, kIso, kSample };
std::string_view mode_name(SweepMode mode);

struct SweepOptions {
  std::size_t jobs = 1;
  bool run_checkers = true;
  std::size_t max_witnesses = 100;
  // Called with the number of codes scanned so far; may be invoked from
  // worker threads, but never concurrently.
  std::function<void(std::uint64_t scanned, std::uint64_t total)> progress;
};

struct TheoremReport {
  std::size_t n = 0;
  SweepMode mode = SweepMode::kAll;
  std::size_t max_witnesses = 100;

  std::uint64_t codes_scanned = 0;  // every code in the range
  std::uint64_t total_codes = 0;    // codes visited (canonical ones in ISO mode)
  std::uint64_t dbe_failures = 0;
  std::vector<std::uint64_t> failure_witnesses;  // smallest codes first, capped

  // Ties go to the smallest code.
  std::optional<std::uint32_t> min_lines_overall;
  std::optional<std::uint64_t> argmin_overall;
  std::optional<std::uint32_t> min_lines_no_universal;  // empty when every space has a universal line
  std::optional<std::uint64_t> argmin_no_universal;

  std::vector<std::uint64_t> line_count_histogram;  // index = distinct line count

  bool checkers_run = false;
  StructureTally structure;
  std::array<std::vector<std::uint64_t>, kLawCount> law_witnesses;

  // Associative and commutative; reports must cover disjoint code ranges.
  void merge(const TheoremReport& other);
  [[nodiscard]] std::uint64_t total_violations() const { return structure.total_violations(); }
  [[nodiscard]] bool clean() const { return dbe_failures == 0 && total_violations() == 0; }
};

// Sweeps one code range on the calling thread.
TheoremReport sweep_range(const SweepRange& range, SweepMode mode, const SweepOptions& options = {});

// Sweeps every code of n points (2 <= n <= 8), splitting the range across
// options.jobs threads.
TheoremReport verify_theorem(std::size_t n, SweepMode mode, const SweepOptions& options = {});

// Checks `trials` uniformly random codes of n points (2 <= n <= 11) with the
// same per-space work as a sweep. Deterministic in seed.
TheoremReport sample_theorem(std::size_t n, std::uint64_t trials, std::uint64_t seed, const SweepOptions& options = {});

struct MinLinesRow {
  std::size_t n = 0;
  std::uint32_t min_lines_overall = 0;
  std::uint64_t argmin_overall = 0;
  std::optional<std::uint32_t> min_lines_no_universal;
  std::optional<std::uint64_t> argmin_no_universal;

  friend bool operator==(const MinLinesRow&, const MinLinesRow&) = default;
};

std::vector<MinLinesRow> min_lines_table(std::size_t n_lo, std::size_t n_hi, std::size_t jobs = 1);

struct WitnessSpace {
  std::string label;  // which z-case and d(y,z)
  OneTwoSpace space;
  std::size_t line_count = 0;
};

// The six 6-point spaces obtained from the fixed five-point block on
// u,v,w,x,y = 0..4 by adding z = 5 in each admissible way.
std::vector<WitnessSpace> c8_witnesses();

struct RandomMetricStats {
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t restarts = 0;  // matrices abandoned after too many repairs
  std::vector<DistanceMatrix> failure_examples;
};

struct ExhaustiveStats {
  std::size_t n = 0;
  std::uint64_t codes = 0;
  std::uint64_t failures = 0;
};

struct SmallSpacesReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<ExhaustiveStats> exhaustive;  // n = 2, 3, 4
  std::vector<RandomMetricStats> random;    // n = 2, 3, 4

  [[nodiscard]] std::uint64_t total_failures() const;
};

// Random rational metric on n points: entries p/q with q <= 16 and
// 0 < p/q <= 4; triangle violations are repaired by resampling the long side.
// Deterministic in the generator state.
template <class Rng>
DistanceMatrix random_rational_metric(std::size_t n, Rng& rng, std::uint64_t* restarts = nullptr);

SmallSpacesReport verify_small_spaces(std::uint64_t trials, std::uint64_t seed);

}  // namespace dbe

#include "dbe/random_metric.inl"
