#include "dbe/cli.hpp"

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dbe/kernels.hpp"
#include "dbe/report.hpp"

namespace dbe {

namespace {

using report::Json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  bool json = false;
  bool timing = false;
  std::size_t jobs = 1;
  std::string isa = "auto";
};

struct Outcome {
  Json inputs;
  Json results;
  std::string text;
  bool failed = false;  // any DBE failure or law violation
};

constexpr std::uint64_t kProgressStep = std::uint64_t{1} << 20;

std::function<void(std::uint64_t, std::uint64_t)> progress_printer(std::ostream& err, const std::string& label) {
  auto last = std::make_shared<std::uint64_t>(0);
  return [&err, label, last](std::uint64_t done, std::uint64_t total) {
    if (done / kProgressStep == *last / kProgressStep && done != total) return;
    if (total < kProgressStep) return;
    *last = done;
    err << label << ": " << done << "/" << total << " codes\n" << std::flush;
  };
}

void require_sweep_n(std::size_t n, bool full) {
  if (n < 2 || n > kMaxSweepPoints) throw UsageError("--n must be between 2 and 8");
  if (n == kMaxSweepPoints && !full) {
    throw UsageError("n = 8 sweeps 2^28 codes; pass --full to run it");
  }
}

SweepMode parse_mode(const std::string& mode) {
  if (mode == "all") return SweepMode::kAll;
  if (mode == "iso") return SweepMode::kIso;
  throw UsageError("--mode must be 'all' or 'iso'");
}

std::string trace_lines(const TheoremReport& r) {
  std::ostringstream s;
  if (!r.checkers_run) return s.str();
  for (std::size_t l = 0; l < kLawCount; ++l) {
    s << "  claim-trace " << std::left << std::setw(34) << law_name(static_cast<Law>(l))
      << " instances=" << r.structure.laws[l].instances << " violations=" << r.structure.laws[l].violations << '\n';
  }
  s << "  class shapes:";
  for (std::size_t k = 0; k < kShapeCount; ++k) {
    s << ' ' << shape_name(static_cast<ClassShape>(k)) << '=' << r.structure.shapes[k];
  }
  s << '\n';
  return s.str();
}

template <class T>
std::string opt_str(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string("none");
}

std::string theorem_text(const std::string& title, const TheoremReport& r) {
  std::ostringstream s;
  s << title << " n=" << r.n << " mode=" << mode_name(r.mode) << '\n';
  s << "  codes scanned                 " << r.codes_scanned << '\n';
  s << "  spaces checked                " << r.total_codes << '\n';
  s << "  DBE failures                  " << r.dbe_failures << '\n';
  s << "  min lines overall             " << opt_str(r.min_lines_overall) << " (code " << opt_str(r.argmin_overall)
    << ")\n";
  s << "  min lines, no universal line  " << opt_str(r.min_lines_no_universal) << " (code "
    << opt_str(r.argmin_no_universal) << ")\n";
  s << trace_lines(r);
  s << (r.clean() ? "result: every checked space has the De Bruijn-Erdos property; no law violated\n"
                  : "result: FAILURES FOUND (see witnesses in --json output)\n");
  return s.str();
}

Outcome run_analyze(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "': " + std::strerror(errno));
  const MetricSpace space = validate_metric(parse_distance_matrix(in));
  if (space.size() < 2) throw std::runtime_error("'" + path + "': lines need at least 2 points");

  Outcome o;
  o.inputs["file"] = path;
  const LineFamily family = all_lines(space);
  const DbeVerdict verdict = dbe_verdict(family);
  std::ostringstream text;
  text << "analyze " << path << "\n  points        " << space.size() << "\n  distinct lines " << family.size() << '\n';
  for (const auto& l : family.lines) {
    text << "    {";
    const auto idx = l.indices();
    for (std::size_t i = 0; i < idx.size(); ++i) text << (i ? "," : "") << idx[i];
    text << "}" << (l.is_full() ? "  universal" : "") << '\n';
  }
  text << "  universal line " << (verdict.has_universal ? "yes" : "no") << "\n  DBE property   "
       << (verdict.holds ? "holds" : "FAILS") << '\n';

  o.results["n"] = space.size();
  o.results["lines"] = report::to_json(family)["lines"];
  o.results["pair_to_line"] = report::to_json(family)["pair_to_line"];
  o.results["verdict"] = report::to_json(verdict);
  o.failed = !verdict.holds;

  bool one_two = true;
  OneTwoSpace s12;
  try {
    s12 = as_one_two(space);
  } catch (const MetricError&) {
    one_two = false;
  }
  o.results["one_two"] = one_two;
  if (!one_two) {
    if (!verdict.holds) text << "  this general metric space is a counterexample candidate; report it\n";
    o.text = text.str();
    return o;
  }

  Json twins = Json::array();
  for (auto [u, v] : twin_pairs(s12)) twins.push_back(Json::array({u, v}));
  Json classes = Json::array();
  for (const auto& cls : equiv_classes(family, s12)) {
    Json c;
    Json edges = Json::array();
    for (const auto& e : cls.edges) edges.push_back(Json::array({e.u, e.v, e.label}));
    c["edges"] = std::move(edges);
    c["line"] = report::to_json(cls.line);
    c["shape"] = std::string(shape_name(classify_class(s12, cls)));
    classes.push_back(std::move(c));
  }

  std::vector<Violation> violations = check_claim_c0(s12);
  auto append = [&](std::vector<Violation> more) {
    violations.insert(violations.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  append(check_twin_line_laws(s12));
  append(full_cover_class_check(s12));
  const ConditionalCheck shape = twin_free_shape_check(s12);
  append(shape.violations);
  const ConditionalCheck size = class_size_bound_check(s12);
  append(size.violations);

  o.results["code"] = s12.size() <= kMaxCodePoints ? Json(code_from_space(s12).value) : Json(nullptr);
  o.results["twins"] = std::move(twins);
  o.results["classes"] = std::move(classes);
  o.results["twin_free_shape_applicable"] = shape.applicable;
  o.results["class_size_bound_applicable"] = size.applicable;
  o.results["violation_count"] = violations.size();
  o.results["violations"] = report::to_json(violations);
  o.failed = o.failed || !violations.empty();

  text << "  twin pairs     " << o.results["twins"].size() << "\n  edge classes   " << o.results["classes"].size()
       << "\n  violations     " << violations.size() << '\n';
  o.text = text.str();
  return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lines in finite metric spaces and exhaustive checks on 1-2 metric spaces", "dbe12"};
  app.require_subcommand(1);
  CommonFlags common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json, "Write a JSON report instead of text");
    sub->add_flag("--timing", common.timing, "Include runtime_ms in the JSON report");
    sub->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::Range(1, 1024));
    sub->add_option("--isa", common.isa, "Kernel set: auto, scalar or avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  };

  std::string file;
  auto* analyze = app.add_subcommand("analyze", "Lines, DBE verdict and structure of one matrix file");
  analyze->add_option("file", file, "Distance matrix file")->required();
  add_common(analyze);

  std::size_t n = 0;
  std::string mode = "all";
  std::size_t max_witnesses = 100;
  bool full = false;
  bool theorem_only = false;
  auto* enumerate = app.add_subcommand("enumerate", "Sweep every 1-2 space on n points");
  enumerate->add_option("--n", n, "Point count (2..8)")->required();
  enumerate->add_option("--mode", mode, "all or iso");
  enumerate->add_option("--max-witnesses", max_witnesses, "Stored witness codes per list");
  enumerate->add_flag("--full", full, "Allow the n = 8 sweep");
  enumerate->add_flag("--theorem-only", theorem_only, "Skip the structural checkers");
  add_common(enumerate);

  bool sample = false;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 42;
  auto* claims = app.add_subcommand("claims", "Run the structural checkers over all or sampled codes");
  claims->add_option("--n", n, "Point count (2..8 exhaustive, 2..11 sampled)")->required();
  claims->add_option("--mode", mode, "all or iso");
  claims->add_option("--max-witnesses", max_witnesses, "Stored witness codes per list");
  claims->add_flag("--sample", sample, "Check random codes instead of all codes");
  claims->add_option("--trials", trials, "Random codes when sampling");
  claims->add_option("--seed", seed, "Seed when sampling");
  claims->add_flag("--full", full, "Allow the n = 8 sweep");
  add_common(claims);

  auto* witness = app.add_subcommand("witness-c8", "The six 6-point spaces around the fixed 5-point block");
  add_common(witness);

  std::size_t n_lo = 2;
  std::size_t n_hi = 7;
  auto* min_lines = app.add_subcommand("min-lines", "Exact minimum line counts per n");
  min_lines->add_option("--n-lo", n_lo, "Smallest n");
  min_lines->add_option("--n-hi", n_hi, "Largest n");
  min_lines->add_flag("--full", full, "Allow n = 8");
  add_common(min_lines);

  auto* random = app.add_subcommand("random-metrics", "All 1-2 spaces and random rational metrics on 2..4 points");
  random->add_option("--trials", trials, "Random metrics per n");
  random->add_option("--seed", seed, "Generator seed");
  add_common(random);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::string subcommand;
  try {
    if (common.isa == "scalar") {
      kernels::force_isa(kernels::Isa::kScalar);
    } else if (common.isa == "avx2") {
      kernels::force_isa(kernels::Isa::kAvx2);
    } else {
      kernels::reset_isa();
    }

    SweepOptions options;
    options.jobs = common.jobs;
    options.max_witnesses = max_witnesses;

    if (analyze->parsed()) {
      subcommand = "analyze";
      o = run_analyze(file);
    } else if (enumerate->parsed() || (claims->parsed() && !sample)) {
      subcommand = enumerate->parsed() ? "enumerate" : "claims";
      const SweepMode m = parse_mode(mode);
      require_sweep_n(n, full);
      options.run_checkers = claims->parsed() || !theorem_only;
      options.progress = progress_printer(err, subcommand);
      const TheoremReport r = verify_theorem(n, m, options);
      o.inputs["n"] = n;
      o.inputs["mode"] = mode;
      o.inputs["checkers"] = options.run_checkers;
      o.inputs["max_witnesses"] = max_witnesses;
      o.results = report::to_json(r);
      o.text = theorem_text(subcommand, r);
      o.failed = !r.clean();
    } else if (claims->parsed()) {
      subcommand = "claims";
      if (n < 2 || n > kMaxCodePoints) throw UsageError("--n must be between 2 and 11 when sampling");
      const TheoremReport r = sample_theorem(n, trials, seed, options);
      o.inputs["n"] = n;
      o.inputs["mode"] = "sample";
      o.inputs["trials"] = trials;
      o.inputs["seed"] = seed;
      o.inputs["max_witnesses"] = max_witnesses;
      o.results = report::to_json(r);
      o.text = theorem_text(subcommand, r);
      o.failed = !r.clean();
    } else if (witness->parsed()) {
      subcommand = "witness-c8";
      const auto spaces = c8_witnesses();
      Json list = Json::array();
      std::ostringstream text;
      text << "witness-c8: six 6-point spaces, points u,v,w,x,y,z = 0..5\n";
      bool all_ok = true;
      for (const auto& w : spaces) {
        list.push_back(report::to_json(w));
        text << "  " << std::left << std::setw(24) << w.label << " code " << std::setw(6)
             << code_from_space(w.space).value << " lines " << w.line_count << '\n';
        all_ok = all_ok && w.line_count >= 6;
      }
      o.inputs = Json::object();
      o.results["spaces"] = std::move(list);
      o.results["all_at_least_six"] = all_ok;
      o.results["failures"] = all_ok ? 0 : 1;
      text << (all_ok ? "result: every space has at least 6 distinct lines\n" : "result: FAILURE\n");
      o.text = text.str();
      o.failed = !all_ok;
    } else if (min_lines->parsed()) {
      subcommand = "min-lines";
      require_sweep_n(n_lo, full);
      require_sweep_n(n_hi, full);
      if (n_lo > n_hi) throw UsageError("--n-lo must not exceed --n-hi");
      const auto rows = min_lines_table(n_lo, n_hi, common.jobs);
      std::ostringstream text;
      text << "min-lines\n   n  min_overall  argmin  min_no_universal  argmin\n";
      std::uint64_t below_n = 0;
      for (const auto& r : rows) {
        text << std::right << std::setw(4) << r.n << std::setw(13) << r.min_lines_overall << std::setw(8)
             << r.argmin_overall << std::setw(18) << opt_str(r.min_lines_no_universal) << std::setw(8)
             << opt_str(r.argmin_no_universal) << '\n';
        if (r.min_lines_no_universal && *r.min_lines_no_universal < r.n) ++below_n;
      }
      o.inputs["n_lo"] = n_lo;
      o.inputs["n_hi"] = n_hi;
      o.results["rows"] = report::to_json(rows);
      o.results["failures"] = below_n;
      o.text = text.str();
      o.failed = below_n != 0;
    } else if (random->parsed()) {
      subcommand = "random-metrics";
      const SmallSpacesReport r = verify_small_spaces(trials, seed);
      std::ostringstream text;
      text << "random-metrics trials=" << trials << " seed=" << seed << '\n';
      for (const auto& e : r.exhaustive) {
        text << "  1-2 spaces n=" << e.n << "  codes " << e.codes << "  failures " << e.failures << '\n';
      }
      for (const auto& s : r.random) {
        text << "  rational metrics n=" << s.n << "  trials " << s.trials << "  failures " << s.failures
             << "  restarts " << s.restarts << '\n';
      }
      text << (r.total_failures() == 0 ? "result: no counterexample found\n"
                                       : "result: COUNTEREXAMPLE CANDIDATES FOUND\n");
      o.inputs["trials"] = trials;
      o.inputs["seed"] = seed;
      o.results = report::to_json(r);
      o.text = text.str();
      o.failed = r.total_failures() != 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  if (common.json) {
    out << report::dump(report::envelope(subcommand, std::move(o.inputs), std::move(o.results),
                                         common.timing ? std::optional<std::int64_t>(elapsed) : std::nullopt));
  } else {
    out << o.text;
    if (common.timing) out << "  runtime_ms " << elapsed << '\n';
  }
  return o.failed ? kExitViolation : kExitOk;
}

}  // namespace dbe
