#pragma once

#include "tap/instance.hpp"
#include "tap/matching.hpp"
#include "tap/solvers.hpp"
#include "tap/stability.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tap {

using json = nlohmann::ordered_json;

// Instance documents. Parsing is total: a fully validated Instance or an
// InstanceError (syntax errors carry the byte offset).
Instance parse_instance(std::string_view text);
RawInstance raw_instance_from_json(const json &doc);
json instance_to_json(const Instance &inst);

// Canonical text: fixed key order, two-space indent, trailing LF.
std::string serialize_instance(const Instance &inst);

// Matching documents: {"pairs": [[applicant, school], ...]}.
std::vector<std::pair<std::string, std::string>> parse_matching_pairs(std::string_view text);
Matching parse_matching(const Instance &inst, std::string_view text);
json matching_to_json(const Instance &inst, const Matching &m);
std::string serialize_matching(const Instance &inst, const Matching &m);

json validity_to_json(const Instance &inst, const ValidityReport &report);
json stability_to_json(const Instance &inst, const StabilityReport &report);
json stats_to_json(const SearchStats &stats);
json solve_result_to_json(const Instance &inst, const SolveResult &result, bool with_stats);
json min_bp_to_json(const Instance &inst, const MinBpResult &result, bool with_stats);

// dump(2) plus a trailing newline.
std::string to_document(const json &doc);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view content);

} // namespace tap
