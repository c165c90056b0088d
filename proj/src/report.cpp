#include "dbe/report.hpp"

namespace dbe::report {

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json codes_json(const std::vector<std::uint64_t>& codes) {
  Json a = Json::array();
  for (auto c : codes) a.push_back(c);
  return a;
}

}  // namespace

Json to_json(const PointSet& set) {
  Json a = Json::array();
  for (auto p : set.indices()) a.push_back(p);
  return a;
}

Json to_json(const DbeVerdict& verdict) {
  Json j;
  j["line_count"] = verdict.line_count;
  j["has_universal"] = verdict.has_universal;
  j["holds"] = verdict.holds;
  return j;
}

Json to_json(const LineFamily& family) {
  Json lines = Json::array();
  for (const auto& l : family.lines) lines.push_back(to_json(l));
  Json pairs = Json::array();
  std::size_t k = 0;
  for (PointId u = 0; u < family.n; ++u) {
    for (PointId v = u + 1; v < family.n; ++v, ++k) pairs.push_back(Json::array({u, v, family.pair_to_line[k]}));
  }
  Json j;
  j["n"] = family.n;
  j["lines"] = std::move(lines);
  j["pair_to_line"] = std::move(pairs);
  return j;
}

Json to_json(const DistanceMatrix& matrix) {
  Json rows = Json::array();
  for (PointId i = 0; i < matrix.size(); ++i) {
    Json row = Json::array();
    for (PointId j = 0; j < matrix.size(); ++j) row.push_back(matrix.at(i, j).fraction_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const OneTwoSpace& space) {
  Json j;
  j["n"] = space.size();
  if (space.size() <= kMaxCodePoints) j["code"] = code_from_space(space).value;
  Json near = Json::array();
  for (PointId p = 0; p < space.size(); ++p) near.push_back(to_json(PointSet::from_mask(space.size(), space.near(p))));
  j["distance_one_neighbours"] = std::move(near);
  return j;
}

Json to_json(const Violation& violation) {
  Json j;
  j["law"] = std::string(law_name(violation.law));
  j["points"] = violation.points;
  j["labels"] = violation.labels;
  Json lines = Json::array();
  for (const auto& l : violation.lines) lines.push_back(to_json(l));
  j["lines"] = std::move(lines);
  return j;
}

Json to_json(const std::vector<Violation>& violations) {
  Json a = Json::array();
  for (const auto& v : violations) a.push_back(to_json(v));
  return a;
}

Json to_json(const StructureTally& tally, const std::array<std::vector<std::uint64_t>, kLawCount>& witnesses) {
  Json laws = Json::array();
  for (std::size_t l = 0; l < kLawCount; ++l) {
    Json entry;
    entry["law"] = std::string(law_name(static_cast<Law>(l)));
    entry["instances"] = tally.laws[l].instances;
    entry["violations"] = tally.laws[l].violations;
    entry["witness_codes"] = codes_json(witnesses[l]);
    laws.push_back(std::move(entry));
  }
  Json shapes;
  for (std::size_t s = 0; s < kShapeCount; ++s) shapes[std::string(shape_name(static_cast<ClassShape>(s)))] = tally.shapes[s];
  Json j;
  j["spaces"] = tally.spaces;
  j["spaces_with_twins"] = tally.spaces_with_twins;
  j["spaces_twin_free_no_universal"] = tally.spaces_twin_free_no_universal;
  j["class_counts_by_shape"] = std::move(shapes);
  j["laws"] = std::move(laws);
  j["total_violations"] = tally.total_violations();
  return j;
}

Json to_json(const TheoremReport& r) {
  Json j;
  j["n"] = r.n;
  j["mode"] = std::string(mode_name(r.mode));
  j["codes_scanned"] = r.codes_scanned;
  j["total_codes"] = r.total_codes;
  if (r.mode == SweepMode::kIso) j["canonical_class_count"] = r.total_codes;
  j["dbe_failures"] = r.dbe_failures;
  j["failure_witnesses"] = codes_json(r.failure_witnesses);
  j["min_lines_overall"] = optional_json(r.min_lines_overall);
  j["argmin_overall"] = optional_json(r.argmin_overall);
  j["min_lines_no_universal"] = optional_json(r.min_lines_no_universal);
  j["argmin_no_universal"] = optional_json(r.argmin_no_universal);
  j["line_count_histogram"] = r.line_count_histogram;
  j["checkers_run"] = r.checkers_run;
  if (r.checkers_run) j["structure"] = to_json(r.structure, r.law_witnesses);
  return j;
}

Json to_json(const MinLinesRow& row) {
  Json j;
  j["n"] = row.n;
  j["min_lines_overall"] = row.min_lines_overall;
  j["argmin_overall"] = row.argmin_overall;
  j["min_lines_no_universal"] = optional_json(row.min_lines_no_universal);
  j["argmin_no_universal"] = optional_json(row.argmin_no_universal);
  return j;
}

Json to_json(const std::vector<MinLinesRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a;
}

Json to_json(const WitnessSpace& witness) {
  Json j;
  j["case"] = witness.label;
  j["space"] = to_json(witness.space);
  j["line_count"] = witness.line_count;
  return j;
}

Json to_json(const SmallSpacesReport& r) {
  Json exhaustive = Json::array();
  for (const auto& e : r.exhaustive) {
    Json row;
    row["n"] = e.n;
    row["codes"] = e.codes;
    row["failures"] = e.failures;
    exhaustive.push_back(std::move(row));
  }
  Json random = Json::array();
  for (const auto& s : r.random) {
    Json row;
    row["n"] = s.n;
    row["trials"] = s.trials;
    row["failures"] = s.failures;
    row["restarts"] = s.restarts;
    Json examples = Json::array();
    for (const auto& m : s.failure_examples) examples.push_back(to_json(m));
    row["failure_examples"] = std::move(examples);
    random.push_back(std::move(row));
  }
  Json j;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["exhaustive_one_two"] = std::move(exhaustive);
  j["random_rational_metrics"] = std::move(random);
  j["total_failures"] = r.total_failures();
  return j;
}

MinLinesRow min_lines_row_from_json(const Json& j) {
  MinLinesRow row;
  row.n = j.at("n").get<std::size_t>();
  row.min_lines_overall = j.at("min_lines_overall").get<std::uint32_t>();
  row.argmin_overall = j.at("argmin_overall").get<std::uint64_t>();
  if (!j.at("min_lines_no_universal").is_null()) {
    row.min_lines_no_universal = j.at("min_lines_no_universal").get<std::uint32_t>();
    row.argmin_no_universal = j.at("argmin_no_universal").get<std::uint64_t>();
  }
  return row;
}

std::vector<MinLinesRow> min_lines_from_json(const Json& j) {
  std::vector<MinLinesRow> rows;
  for (const auto& r : j) rows.push_back(min_lines_row_from_json(r));
  return rows;
}

DistanceMatrix matrix_from_json(const Json& j) {
  const std::size_t n = j.size();
  DistanceMatrix m(n);
  for (PointId i = 0; i < n; ++i) {
    if (j[i].size() != n) throw std::invalid_argument("matrix JSON is not square");
    for (PointId k = 0; k < n; ++k) m.at(i, k) = Rational::parse(j[i][k].get<std::string>());
  }
  return m;
}

Json envelope(const std::string& subcommand, Json inputs, Json results, std::optional<std::int64_t> runtime_ms) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["subcommand"] = subcommand;
  j["inputs"] = std::move(inputs);
  j["results"] = std::move(results);
  if (runtime_ms) j["runtime_ms"] = *runtime_ms;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace dbe::report
