#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dbe/cli.hpp"
#include "dbe/report.hpp"

using namespace dbe;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(DBE_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("report serialization") {
  CHECK(report::to_json(DbeVerdict{1, true, true}).dump() == R"({"line_count":1,"has_universal":true,"holds":true})");
  CHECK(report::to_json(std::vector<Violation>{}).dump() == "[]");
  PointSet s(4);
  s.insert(2);
  s.insert(0);
  s.insert(1);
  CHECK(report::to_json(s).dump() == "[0,1,2]");

  DistanceMatrix m(2);
  m.set_symmetric(0, 1, Rational(3, 2));
  const auto j = report::to_json(m);
  CHECK(j.dump() == R"([["0/1","3/2"],["3/2","0/1"]])");
  CHECK(report::matrix_from_json(j) == m);

  const auto rows = min_lines_table(2, 5);
  const auto text = report::dump(report::to_json(rows));
  CHECK(report::min_lines_from_json(report::Json::parse(text)) == rows);

  const auto env = report::envelope("x", report::Json::object(), report::Json::object(), std::nullopt);
  CHECK(env.dump() == R"({"schema_version":"1","subcommand":"x","inputs":{},"results":{}})");
  CHECK(report::envelope("x", {}, {}, 5)["runtime_ms"] == 5);
}

TEST_CASE("analyze") {
  SUBCASE("path space, text") {
    const auto r = run({"analyze", data("path3.txt")});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("distinct lines 1") != std::string::npos);
    CHECK(r.out.find("universal line yes") != std::string::npos);
    CHECK(r.out.find("DBE property   holds") != std::string::npos);
  }
  SUBCASE("path space, json") {
    const auto r = run({"analyze", data("path3.txt"), "--json"});
    REQUIRE(r.code == kExitOk);
    const auto j = report::Json::parse(r.out);
    CHECK(j["schema_version"] == "1");
    CHECK(j["subcommand"] == "analyze");
    CHECK(j["results"]["lines"].dump() == "[[0,1,2]]");
    CHECK(j["results"]["verdict"]["line_count"] == 1);
    CHECK(j["results"]["verdict"]["holds"] == true);
    CHECK(j["results"]["twins"].dump() == "[[0,2]]");
    CHECK(j["results"]["violation_count"] == 0);
    CHECK_FALSE(j.contains("runtime_ms"));
  }
  SUBCASE("general metric") {
    const auto r = run({"analyze", data("mixed.txt"), "--json"});
    REQUIRE(r.code == kExitOk);
    const auto j = report::Json::parse(r.out);
    CHECK(j["results"]["one_two"] == false);
    CHECK(j["results"]["verdict"]["holds"] == true);
  }
  SUBCASE("missing file") {
    const auto r = run({"analyze", data("no-such-file.txt")});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("no-such-file.txt") != std::string::npos);
  }
  SUBCASE("invalid metric") {
    const std::string path = "cli_test_bad_metric.txt";
    std::ofstream(path) << "3\n0 5 1\n5 0 1\n1 1 0\n";
    const auto r = run({"analyze", path});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("triangle") != std::string::npos);
  }
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"enumerate", "--n", "4", "--bogus"}).code == kExitUsage);
  CHECK(run({"enumerate"}).code == kExitUsage);
  CHECK(run({"enumerate", "--n", "9"}).code == kExitUsage);
  CHECK(run({"enumerate", "--n", "8"}).code == kExitUsage);  // needs --full
  CHECK(run({"enumerate", "--n", "4", "--mode", "fast"}).code == kExitUsage);
  CHECK(run({"enumerate", "--n", "4", "--jobs", "0"}).code == kExitUsage);
  CHECK(run({"min-lines", "--n-lo", "5", "--n-hi", "3"}).code == kExitUsage);
  CHECK(run({"claims", "--n", "12", "--sample"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("enumerate") {
  const auto r = run({"enumerate", "--n", "5", "--json"});
  REQUIRE(r.code == kExitOk);
  const auto j = report::Json::parse(r.out);
  CHECK(j["results"]["total_codes"] == 1024);
  CHECK(j["results"]["dbe_failures"] == 0);
  CHECK(j["results"]["structure"]["total_violations"] == 0);
  CHECK(j["inputs"]["mode"] == "all");

  const auto iso = report::Json::parse(run({"enumerate", "--n", "4", "--mode", "iso", "--json"}).out);
  CHECK(iso["results"]["canonical_class_count"] == 11);

  const auto text = run({"enumerate", "--n", "5"});
  CHECK(text.out.find("claim-trace distinct_lines_disjoint_labels") != std::string::npos);
  CHECK(text.out.find("violations=0") != std::string::npos);

  const auto bare = report::Json::parse(run({"enumerate", "--n", "4", "--theorem-only", "--json"}).out);
  CHECK(bare["results"]["checkers_run"] == false);
  CHECK_FALSE(bare["results"].contains("structure"));
}

TEST_CASE("output is independent of jobs and isa") {
  const auto one = run({"enumerate", "--n", "6", "--json", "--jobs", "1"});
  const auto eight = run({"enumerate", "--n", "6", "--json", "--jobs", "8"});
  const auto scalar = run({"enumerate", "--n", "6", "--json", "--isa", "scalar"});
  REQUIRE(one.code == kExitOk);
  CHECK(one.out == eight.out);
  CHECK(one.out == scalar.out);
  CHECK(run({"enumerate", "--n", "6", "--json", "--jobs", "1"}).out == one.out);

  CHECK(run({"min-lines", "--n-hi", "6", "--json", "--jobs", "3"}).out ==
        run({"min-lines", "--n-hi", "6", "--json"}).out);
  CHECK(run({"claims", "--n", "9", "--sample", "--trials", "500", "--json", "--jobs", "4"}).out ==
        run({"claims", "--n", "9", "--sample", "--trials", "500", "--json"}).out);
}

TEST_CASE("timing is opt-in") {
  const auto r = run({"witness-c8", "--json", "--timing"});
  CHECK(report::Json::parse(r.out).contains("runtime_ms"));
}

TEST_CASE("other subcommands") {
  const auto w = run({"witness-c8", "--json"});
  REQUIRE(w.code == kExitOk);
  const auto wj = report::Json::parse(w.out);
  REQUIRE(wj["results"]["spaces"].size() == 6);
  for (const auto& s : wj["results"]["spaces"]) CHECK(s["line_count"].get<int>() >= 6);

  const auto m = run({"min-lines", "--n-lo", "3", "--n-hi", "5", "--json"});
  REQUIRE(m.code == kExitOk);
  const auto rows = report::min_lines_from_json(report::Json::parse(m.out)["results"]["rows"]);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].min_lines_no_universal == 3u);

  const auto c = run({"claims", "--n", "5"});
  CHECK(c.code == kExitOk);

  const auto rm = run({"random-metrics", "--trials", "500", "--seed", "3", "--json"});
  REQUIRE(rm.code == kExitOk);
  const auto rj = report::Json::parse(rm.out);
  CHECK(rj["results"]["total_failures"] == 0);
  CHECK(rj["inputs"]["seed"] == 3);
  CHECK(run({"random-metrics", "--trials", "500", "--seed", "3"}).out.find("no counterexample found") !=
        std::string::npos);
}
