#include "dbe/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "dbe/kernels.hpp"

namespace dbe {

namespace {

// For each non-identity permutation of n points, the old bit index feeding
// each new bit, stored high bit first so comparisons can stop early.
struct PermutationTable {
  std::size_t pairs = 0;
  std::size_t count = 0;
  std::vector<std::uint8_t> source;  // count rows of `pairs` entries
};

PermutationTable build_permutations(std::size_t n) {
  PermutationTable t;
  t.pairs = pair_count(n);
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) ends.emplace_back(a, b);
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    for (std::size_t k = t.pairs; k-- > 0;) {
      const std::size_t pa = perm[ends[k].first];
      const std::size_t pb = perm[ends[k].second];
      t.source.push_back(static_cast<std::uint8_t>(pa < pb ? pair_index(pa, pb, n) : pair_index(pb, pa, n)));
    }
    ++t.count;
  }
  return t;
}

const PermutationTable& permutations(std::size_t n) {
  static std::array<PermutationTable, kMaxSweepPoints + 1> tables;
  static std::array<std::once_flag, kMaxSweepPoints + 1> once;
  std::call_once(once[n], [n] { tables[n] = build_permutations(n); });
  return tables[n];
}

void check_sweep_n(std::size_t n) {
  if (n < 2 || n > kMaxSweepPoints) {
    throw std::invalid_argument("sweeps need 2 <= n <= " + std::to_string(kMaxSweepPoints));
  }
}

void merge_capped(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from, std::size_t cap) {
  std::vector<std::uint64_t> merged;
  merged.reserve(into.size() + from.size());
  std::merge(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  if (merged.size() > cap) merged.resize(cap);
  into = std::move(merged);
}

void take_min(std::optional<std::uint32_t>& value, std::optional<std::uint64_t>& arg, std::uint32_t v,
              std::uint64_t code) {
  if (!value || v < *value || (v == *value && code < *arg)) {
    value = v;
    arg = code;
  }
}

TheoremReport empty_report(std::size_t n, SweepMode mode, const SweepOptions& options) {
  TheoremReport r;
  r.n = n;
  r.mode = mode;
  r.max_witnesses = options.max_witnesses;
  r.line_count_histogram.assign(pair_count(n) + 1, 0);
  r.checkers_run = options.run_checkers;
  return r;
}

}  // namespace

SweepRange SweepRange::all(std::size_t n) {
  check_sweep_n(n);
  return SweepRange{n, 0, LabelCode{n, 0}.limit()};
}

void SweepRange::validate() const {
  const std::uint64_t limit = LabelCode{n, 0}.limit();
  if (lo > hi || (limit != 0 && hi > limit)) throw std::invalid_argument("sweep range outside the code space");
}

std::uint64_t enumerate_codes(const SweepRange& range,
                              const std::function<void(const OneTwoSpace&, std::uint64_t)>& visitor) {
  range.validate();
  std::uint64_t visits = 0;
  for (std::uint64_t c = range.lo; c < range.hi; ++c, ++visits) visitor(space_from_code(LabelCode{range.n, c}), c);
  return visits;
}

LabelCode canonical_code(const OneTwoSpace& space) {
  const std::size_t n = space.size();
  if (n > kMaxSweepPoints) throw std::invalid_argument("canonical codes need n <= 8");
  const std::uint64_t code = code_from_space(space).value;
  if (n < 2) return LabelCode{n, code};
  const auto& t = permutations(n);
  std::uint64_t best = code;
  for (std::size_t p = 0; p < t.count; ++p) {
    const std::uint8_t* src = t.source.data() + p * t.pairs;
    std::uint64_t permuted = 0;
    for (std::size_t r = 0; r < t.pairs; ++r) {
      permuted |= ((code >> src[r]) & 1U) << (t.pairs - 1 - r);
    }
    best = std::min(best, permuted);
  }
  return LabelCode{n, best};
}

bool is_canonical(std::uint64_t code, std::size_t n) {
  if (n > kMaxSweepPoints) throw std::invalid_argument("canonical codes need n <= 8");
  if (n < 2) return true;
  const auto& t = permutations(n);
  for (std::size_t p = 0; p < t.count; ++p) {
    const std::uint8_t* src = t.source.data() + p * t.pairs;
    for (std::size_t r = 0; r < t.pairs; ++r) {
      const std::size_t k = t.pairs - 1 - r;
      const auto permuted_bit = (code >> src[r]) & 1U;
      const auto own_bit = (code >> k) & 1U;
      if (permuted_bit != own_bit) {
        if (permuted_bit < own_bit) return false;
        break;
      }
    }
  }
  return true;
}

std::string_view mode_name(SweepMode mode) {
  switch (mode) {
    case SweepMode::kAll:
      return "all";
    case SweepMode::kIso:
      return "iso";
    case SweepMode::kSample:
      return "sample";
  }
  return "unknown";
}

void TheoremReport::merge(const TheoremReport& other) {
  if (other.n != n || other.mode != mode) throw std::invalid_argument("merging reports of different sweeps");
  codes_scanned += other.codes_scanned;
  total_codes += other.total_codes;
  dbe_failures += other.dbe_failures;
  merge_capped(failure_witnesses, other.failure_witnesses, max_witnesses);
  if (other.min_lines_overall) take_min(min_lines_overall, argmin_overall, *other.min_lines_overall, *other.argmin_overall);
  if (other.min_lines_no_universal) {
    take_min(min_lines_no_universal, argmin_no_universal, *other.min_lines_no_universal, *other.argmin_no_universal);
  }
  for (std::size_t i = 0; i < line_count_histogram.size() && i < other.line_count_histogram.size(); ++i) {
    line_count_histogram[i] += other.line_count_histogram[i];
  }
  structure.merge(other.structure);
  for (std::size_t l = 0; l < kLawCount; ++l) merge_capped(law_witnesses[l], other.law_witnesses[l], max_witnesses);
}

TheoremReport sweep_range(const SweepRange& range, SweepMode mode, const SweepOptions& options) {
  check_sweep_n(range.n);
  range.validate();
  const std::size_t n = range.n;
  TheoremReport report = empty_report(n, mode, options);
  const auto& k = kernels::active();
  StructureScanner scanner;
  kernels::SmallLines small{};
  std::array<Mask, kMaxSweepPoints> near{};
  std::array<Mask, kernels::kSmallLineSlots> lines{};
  const std::size_t pairs = pair_count(n);
  std::array<std::uint64_t, kLawCount> before{};

  for (std::uint64_t code = range.lo; code < range.hi; ++code) {
    ++report.codes_scanned;
    if (mode == SweepMode::kIso && !is_canonical(code, n)) continue;
    ++report.total_codes;

    const std::uint64_t packed = kernels::small_neighbourhoods(code, n);
    k.small_pair_lines(packed, n, small);
    const kernels::SmallLineStats stats = k.small_line_stats(small, n);
    const bool holds = stats.line_count >= n || stats.has_universal;

    if (!holds) {
      ++report.dbe_failures;
      if (report.failure_witnesses.size() < options.max_witnesses) report.failure_witnesses.push_back(code);
    }
    ++report.line_count_histogram[stats.line_count];
    take_min(report.min_lines_overall, report.argmin_overall, stats.line_count, code);
    if (!stats.has_universal) take_min(report.min_lines_no_universal, report.argmin_no_universal, stats.line_count, code);

    if (options.run_checkers) {
      for (std::size_t p = 0; p < n; ++p) near[p] = (packed >> (8 * p)) & 0xFF;
      for (std::size_t q = 0; q < pairs; ++q) lines[q] = small[q];
      for (std::size_t l = 0; l < kLawCount; ++l) before[l] = report.structure.laws[l].violations;
      scanner.scan(LineTable{n, std::span(near.data(), n), std::span(lines.data(), pairs)}, stats.has_universal,
                   report.structure);
      for (std::size_t l = 0; l < kLawCount; ++l) {
        if (report.structure.laws[l].violations != before[l] && report.law_witnesses[l].size() < options.max_witnesses) {
          report.law_witnesses[l].push_back(code);
        }
      }
    }
  }
  return report;
}

TheoremReport verify_theorem(std::size_t n, SweepMode mode, const SweepOptions& options) {
  const SweepRange whole = SweepRange::all(n);
  const std::size_t jobs = std::max<std::size_t>(options.jobs, 1);
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;
  const std::uint64_t chunks = (whole.hi + kChunk - 1) / kChunk;

  // Worker-local reports merged at the end; merge is commutative, so the
  // result does not depend on which worker took which chunk.
  std::vector<TheoremReport> partial(jobs, empty_report(n, mode, options));
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> scanned{0};
  std::mutex progress_mutex;

  auto work = [&](std::size_t worker) {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) break;
      const SweepRange range{n, c * kChunk, std::min(whole.hi, (c + 1) * kChunk)};
      partial[worker].merge(sweep_range(range, mode, options));
      const std::uint64_t done = scanned.fetch_add(range.hi - range.lo) + (range.hi - range.lo);
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress(done, whole.hi);
      }
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) threads.emplace_back(work, w);
  }

  TheoremReport report = empty_report(n, mode, options);
  for (const auto& p : partial) report.merge(p);
  return report;
}

TheoremReport sample_theorem(std::size_t n, std::uint64_t trials, std::uint64_t seed, const SweepOptions& options) {
  if (n < 2 || n > kMaxCodePoints) throw std::invalid_argument("sampling needs 2 <= n <= 11");
  TheoremReport report = empty_report(n, SweepMode::kSample, options);
  const std::uint64_t limit = LabelCode{n, 0}.limit();
  const std::uint64_t code_mask = limit == 0 ? ~std::uint64_t{0} : limit - 1;
  std::seed_seq seq{seed, static_cast<std::uint64_t>(n)};
  std::mt19937_64 rng(seq);
  StructureScanner scanner;
  std::vector<Mask> lines(pair_count(n));
  std::array<std::uint64_t, kLawCount> before{};

  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t code = rng() & code_mask;
    ++report.codes_scanned;
    ++report.total_codes;
    const OneTwoSpace space = space_from_code(LabelCode{n, code});
    kernels::active().wide_pair_lines(space.neighbourhoods(), lines);
    std::vector<Mask> distinct(lines);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const auto count = static_cast<std::uint32_t>(distinct.size());
    const bool universal = distinct.back() == space.all_points();
    if (count < n && !universal) {
      ++report.dbe_failures;
      report.failure_witnesses.push_back(code);
    }
    ++report.line_count_histogram[count];
    take_min(report.min_lines_overall, report.argmin_overall, count, code);
    if (!universal) take_min(report.min_lines_no_universal, report.argmin_no_universal, count, code);

    if (options.run_checkers) {
      for (std::size_t l = 0; l < kLawCount; ++l) before[l] = report.structure.laws[l].violations;
      scanner.scan(LineTable{n, space.neighbourhoods(), lines}, universal, report.structure);
      for (std::size_t l = 0; l < kLawCount; ++l) {
        if (report.structure.laws[l].violations != before[l]) report.law_witnesses[l].push_back(code);
      }
    }
  }
  // Witness lists follow the sorted, capped convention of the sweeps.
  auto tidy = [&](std::vector<std::uint64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.size() > options.max_witnesses) v.resize(options.max_witnesses);
  };
  tidy(report.failure_witnesses);
  for (auto& w : report.law_witnesses) tidy(w);
  return report;
}

std::vector<MinLinesRow> min_lines_table(std::size_t n_lo, std::size_t n_hi, std::size_t jobs) {
  check_sweep_n(n_lo);
  check_sweep_n(n_hi);
  if (n_lo > n_hi) throw std::invalid_argument("min-lines range is empty");
  std::vector<MinLinesRow> rows;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    SweepOptions options;
    options.jobs = jobs;
    options.run_checkers = false;
    const TheoremReport r = verify_theorem(n, SweepMode::kAll, options);
    rows.push_back(MinLinesRow{n, *r.min_lines_overall, *r.argmin_overall, r.min_lines_no_universal,
                               r.argmin_no_universal});
  }
  return rows;
}

std::vector<WitnessSpace> c8_witnesses() {
  enum : PointId { u, v, w, x, y, z };
  OneTwoSpace base = OneTwoSpace::all_ones(6);
  base.set_distance(u, v, 2);
  base.set_distance(w, x, 2);
  base.set_distance(v, y, 2);
  base.set_distance(x, y, 2);

  struct ZCase {
    const char* name;
    int uz_xz;
    int vz_wz;
  };
  constexpr ZCase cases[] = {{"uz=xz=1,vz=wz=1", 1, 1}, {"uz=xz=1,vz=wz=2", 1, 2}, {"uz=xz=2,vz=wz=2", 2, 2}};

  std::vector<WitnessSpace> out;
  for (const auto& c : cases) {
    for (int yz : {1, 2}) {
      OneTwoSpace s = base;
      s.set_distance(u, z, c.uz_xz);
      s.set_distance(x, z, c.uz_xz);
      s.set_distance(v, z, c.vz_wz);
      s.set_distance(w, z, c.vz_wz);
      s.set_distance(y, z, yz);
      const std::size_t count = all_lines(s).size();
      out.push_back(WitnessSpace{std::string(c.name) + ",yz=" + std::to_string(yz), std::move(s), count});
    }
  }
  return out;
}

std::uint64_t SmallSpacesReport::total_failures() const {
  std::uint64_t total = 0;
  for (const auto& e : exhaustive) total += e.failures;
  for (const auto& r : random) total += r.failures;
  return total;
}

SmallSpacesReport verify_small_spaces(std::uint64_t trials, std::uint64_t seed) {
  SmallSpacesReport report;
  report.trials = trials;
  report.seed = seed;
  for (std::size_t n = 2; n <= 4; ++n) {
    ExhaustiveStats e{n, 0, 0};
    enumerate_codes(SweepRange::all(n), [&](const OneTwoSpace& s, std::uint64_t) {
      ++e.codes;
      if (!dbe_verdict(s).holds) ++e.failures;
    });
    report.exhaustive.push_back(e);
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(n)};
    std::mt19937_64 rng(seq);
    RandomMetricStats r;
    r.n = n;
    for (std::uint64_t t = 0; t < trials; ++t) {
      DistanceMatrix m = random_rational_metric(n, rng, &r.restarts);
      ++r.trials;
      const MetricSpace space = validate_metric(m);
      if (!dbe_verdict(space).holds) {
        ++r.failures;
        if (r.failure_examples.size() < 100) r.failure_examples.push_back(std::move(m));
      }
    }
    report.random.push_back(std::move(r));
  }
  return report;
}

}  // namespace dbe
