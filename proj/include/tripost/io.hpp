#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "tripost/analyzer.hpp"
#include "tripost/core.hpp"
#include "tripost/search.hpp"

namespace tripost {

using Record = nlohmann::ordered_json;

// Grammar:
//   alphabet: <letters>
//   dominoes:
//   <top> | <middle> | <bottom>     (one line per domino)
// Whitespace around tokens is ignored; blank lines and `#` comments are
// skipped. Errors carry the offending line number.
TriSystem parse_instance(std::string_view text);
std::string serialize_instance(const TriSystem& system);

// Structured form: {"alphabet":"ab","dominoes":[["ab","a","ab"],...]}.
Record instance_to_record(const TriSystem& system);
TriSystem instance_from_record(const nlohmann::json& record);

// Accepts either the text grammar or a structured instance record.
TriSystem parse_instance_any(std::string_view text);

Record certificate_to_record(const Certificate& certificate);
Record stats_to_record(const SearchStats& stats);
Record outcome_to_record(const SearchOutcome& outcome);
Record status_to_record(const GameStatus& status);
Record report_to_record(const AnalysisReport& report);
// One line of a sweep file: "record" is "instance" or "error".
Record sweep_record_to_record(const SweepRecord& record);
Record summary_to_record(const SweepSummary& summary);

std::string describe(const Certificate& certificate);
std::string describe(const SearchOutcome& outcome);
std::string describe(const GameStatus& status);
std::string describe(const AnalysisReport& report);
std::string describe(const SweepSummary& summary);

}  // namespace tripost
