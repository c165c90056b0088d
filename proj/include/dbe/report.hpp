#pragma once

// JSON serialization of results. Key order is fixed by construction, point
// sets are sorted index arrays and rationals are "p/q" strings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dbe/lines.hpp"
#include "dbe/structure.hpp"
#include "dbe/verifier.hpp"

namespace dbe::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

Json to_json(const PointSet& set);
Json to_json(const DbeVerdict& verdict);
Json to_json(const LineFamily& family);
Json to_json(const DistanceMatrix& matrix);
Json to_json(const OneTwoSpace& space);  // label code plus neighbourhoods
Json to_json(const Violation& violation);
Json to_json(const std::vector<Violation>& violations);
Json to_json(const StructureTally& tally, const std::array<std::vector<std::uint64_t>, kLawCount>& witnesses);
Json to_json(const TheoremReport& report);
Json to_json(const MinLinesRow& row);
Json to_json(const std::vector<MinLinesRow>& rows);
Json to_json(const WitnessSpace& witness);
Json to_json(const SmallSpacesReport& report);

MinLinesRow min_lines_row_from_json(const Json& j);
std::vector<MinLinesRow> min_lines_from_json(const Json& j);
DistanceMatrix matrix_from_json(const Json& j);

// Envelope shared by every subcommand. runtime_ms is written only when set,
// which keeps repeated runs byte-identical by default.
Json envelope(const std::string& subcommand, Json inputs, Json results, std::optional<std::int64_t> runtime_ms);

std::string dump(const Json& j);

}  // namespace dbe::report
