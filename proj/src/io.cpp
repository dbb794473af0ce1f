#include "tap/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace tap {

namespace {

    [[noreturn]] void fail(const std::string &where, const std::string &message)
    {
        throw InstanceError(where + ": " + message);
    }

    json parse_json(std::string_view text, const std::string &what)
    {
        try {
            return json::parse(text.begin(), text.end());
        }
        catch (const json::parse_error &e) {
            throw InstanceError(what + ": syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
        }
    }

    void require_keys(const json &obj, const std::string &where, std::initializer_list<const char *> allowed)
    {
        if (! obj.is_object())
            fail(where, "expected an object");
        std::set<std::string> names(allowed.begin(), allowed.end());
        for (const auto &item : obj.items())
            if (! names.count(item.key()))
                fail(where, "unexpected key '" + item.key() + "'");
    }

    const json &member(const json &obj, const char *key, const std::string &where)
    {
        auto it = obj.find(key);
        if (it == obj.end())
            fail(where, std::string("missing '") + key + "'");
        return *it;
    }

    std::string as_string(const json &v, const std::string &where)
    {
        if (! v.is_string())
            fail(where, "expected a string");
        return v.get<std::string>();
    }

    std::vector<std::string> as_strings(const json &v, const std::string &where)
    {
        if (! v.is_array())
            fail(where, "expected an array of strings");
        std::vector<std::string> out;
        for (std::size_t i = 0; i < v.size(); ++i)
            out.push_back(as_string(v[i], where + "[" + std::to_string(i) + "]"));
        return out;
    }

    std::vector<std::pair<std::string, std::vector<std::string>>> as_list_map(const json &v, const std::string &where)
    {
        if (! v.is_object())
            fail(where, "expected an object of subject -> list");
        std::vector<std::pair<std::string, std::vector<std::string>>> out;
        for (const auto &item : v.items())
            out.emplace_back(item.key(), as_strings(item.value(), where + "." + item.key()));
        return out;
    }

    json list_map_to_json(const std::vector<std::pair<std::string, std::vector<std::string>>> &map)
    {
        json out = json::object();
        for (const auto &[key, ids] : map)
            out[key] = ids;
        return out;
    }

} // namespace

RawInstance raw_instance_from_json(const json &doc)
{
    require_keys(doc, "instance",
        {"mode", "subjects", "applicants", "schools", "master_list_applicants", "master_list_schools",
            "master_lists_by_subject"});
    RawInstance raw;

    const auto mode = as_string(member(doc, "mode", "instance"), "mode");
    if (mode == "linear")
        raw.mode = PreferenceMode::linear;
    else if (mode == "subject_specific")
        raw.mode = PreferenceMode::subject_specific;
    else
        fail("mode", "expected \"linear\" or \"subject_specific\", got \"" + mode + "\"");

    raw.subjects = as_strings(member(doc, "subjects", "instance"), "subjects");

    const auto &applicants = member(doc, "applicants", "instance");
    if (! applicants.is_array())
        fail("applicants", "expected an array");
    for (std::size_t i = 0; i < applicants.size(); ++i) {
        const std::string where = "applicants[" + std::to_string(i) + "]";
        const auto &a = applicants[i];
        require_keys(a, where, {"id", "type", "prefs"});
        RawApplicant out;
        out.id = as_string(member(a, "id", where), where + ".id");
        auto type = as_strings(member(a, "type", where), where + ".type");
        if (type.size() != 2)
            fail(where + ".type", "an applicant type has exactly two subjects, got " + std::to_string(type.size()));
        out.type = {type[0], type[1]};
        out.prefs = as_strings(member(a, "prefs", where), where + ".prefs");
        raw.applicants.push_back(std::move(out));
    }

    const auto &schools = member(doc, "schools", "instance");
    if (! schools.is_array())
        fail("schools", "expected an array");
    for (std::size_t i = 0; i < schools.size(); ++i) {
        const std::string where = "schools[" + std::to_string(i) + "]";
        const auto &s = schools[i];
        require_keys(s, where, {"id", "capacities", "prefs", "prefs_by_subject"});
        RawSchool out;
        out.id = as_string(member(s, "id", where), where + ".id");
        const auto &caps = member(s, "capacities", where);
        if (! caps.is_object())
            fail(where + ".capacities", "expected an object of subject -> integer");
        for (const auto &item : caps.items()) {
            if (! item.value().is_number_integer())
                fail(where + ".capacities." + item.key(), "expected an integer");
            out.capacities.emplace_back(item.key(), item.value().get<int>());
        }
        if (s.contains("prefs"))
            out.prefs = as_strings(s["prefs"], where + ".prefs");
        if (s.contains("prefs_by_subject"))
            out.prefs_by_subject = as_list_map(s["prefs_by_subject"], where + ".prefs_by_subject");
        raw.schools.push_back(std::move(out));
    }

    if (doc.contains("master_list_applicants"))
        raw.master_list_applicants = as_strings(doc["master_list_applicants"], "master_list_applicants");
    if (doc.contains("master_list_schools"))
        raw.master_list_schools = as_strings(doc["master_list_schools"], "master_list_schools");
    if (doc.contains("master_lists_by_subject"))
        raw.master_lists_by_subject = as_list_map(doc["master_lists_by_subject"], "master_lists_by_subject");
    return raw;
}

Instance parse_instance(std::string_view text)
{
    return Instance::build(raw_instance_from_json(parse_json(text, "instance")));
}

json instance_to_json(const Instance &inst)
{
    const RawInstance raw = inst.to_raw();
    json doc;
    doc["mode"] = to_string(raw.mode);
    doc["subjects"] = raw.subjects;
    doc["applicants"] = json::array();
    for (const auto &a : raw.applicants) {
        json out;
        out["id"] = a.id;
        out["type"] = {a.type.first, a.type.second};
        out["prefs"] = a.prefs;
        doc["applicants"].push_back(std::move(out));
    }
    doc["schools"] = json::array();
    for (const auto &s : raw.schools) {
        json out;
        out["id"] = s.id;
        out["capacities"] = json::object();
        for (const auto &[subject, value] : s.capacities)
            out["capacities"][subject] = value;
        if (s.prefs)
            out["prefs"] = *s.prefs;
        else
            out["prefs_by_subject"] = list_map_to_json(*s.prefs_by_subject);
        doc["schools"].push_back(std::move(out));
    }
    if (raw.master_list_applicants)
        doc["master_list_applicants"] = *raw.master_list_applicants;
    if (raw.master_list_schools)
        doc["master_list_schools"] = *raw.master_list_schools;
    if (raw.master_lists_by_subject)
        doc["master_lists_by_subject"] = list_map_to_json(*raw.master_lists_by_subject);
    return doc;
}

std::string to_document(const json &doc) { return doc.dump(2) + "\n"; }

std::string serialize_instance(const Instance &inst) { return to_document(instance_to_json(inst)); }

std::vector<std::pair<std::string, std::string>> parse_matching_pairs(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error &e) {
        throw PreconditionError("matching: syntax error at byte " + std::to_string(e.byte));
    }
    if (! doc.is_object() || ! doc.contains("pairs") || ! doc["pairs"].is_array())
        throw PreconditionError("matching: expected an object with a 'pairs' array");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto &p : doc["pairs"]) {
        if (! p.is_array() || p.size() != 2 || ! p[0].is_string() || ! p[1].is_string())
            throw PreconditionError("matching: each pair must be [applicant_id, school_id]");
        pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    return pairs;
}

Matching parse_matching(const Instance &inst, std::string_view text)
{
    return Matching::from_pairs(inst, parse_matching_pairs(text));
}

json matching_to_json(const Instance &inst, const Matching &m)
{
    json pairs = json::array();
    for (const auto &[a, s] : m.pairs(inst))
        pairs.push_back({a, s});
    json doc;
    doc["pairs"] = std::move(pairs);
    return doc;
}

std::string serialize_matching(const Instance &inst, const Matching &m)
{
    return to_document(matching_to_json(inst, m));
}

json validity_to_json(const Instance &inst, const ValidityReport &report)
{
    json doc;
    doc["matching"] = report.is_matching();
    json occupancy = json::array();
    for (int s = 0; s < inst.school_count(); ++s) {
        json row;
        row["school"] = inst.school(s).id;
        row["used"] = json::object();
        row["capacity"] = json::object();
        for (int p = 0; p < inst.subject_count(); ++p) {
            row["used"][inst.subjects()[p]] = report.used[s][p];
            row["capacity"][inst.subjects()[p]] = inst.school(s).capacities[p];
        }
        occupancy.push_back(std::move(row));
    }
    doc["occupancy"] = std::move(occupancy);
    json violations = json::array();
    for (const auto &v : report.violations) {
        json row;
        row["school"] = inst.school(v.school).id;
        row["subject"] = inst.subjects()[v.subject];
        row["used"] = v.used;
        row["capacity"] = v.capacity;
        violations.push_back(std::move(row));
    }
    doc["violations"] = std::move(violations);
    json rejected = json::array();
    for (const auto &[a, s] : report.unacceptable)
        rejected.push_back({a, s});
    doc["unacceptable"] = std::move(rejected);
    return doc;
}

json stability_to_json(const Instance &inst, const StabilityReport &report)
{
    json doc;
    doc["stable"] = report.stable;
    doc["applicant_complete"] = report.applicant_complete;
    json pairs = json::array();
    for (const auto &bp : report.blocking_pairs) {
        json row;
        row["applicant"] = inst.applicant(bp.applicant).id;
        row["school"] = inst.school(bp.school).id;
        row["conditions"] = json::array();
        row["witnesses"] = json::object();
        for (Condition c : all_conditions) {
            if (! bp.satisfies(c))
                continue;
            row["conditions"].push_back(to_string(c));
            json ids = json::array();
            for (int b : bp.witnesses[static_cast<int>(c)])
                ids.push_back(inst.applicant(b).id);
            row["witnesses"][to_string(c)] = std::move(ids);
        }
        pairs.push_back(std::move(row));
    }
    doc["blocking_pairs"] = std::move(pairs);
    return doc;
}

json stats_to_json(const SearchStats &stats)
{
    json doc;
    doc["nodes"] = stats.nodes;
    doc["leaves"] = stats.leaves;
    doc["wall_ms"] = stats.wall_ms;
    return doc;
}

json solve_result_to_json(const Instance &inst, const SolveResult &result, bool with_stats)
{
    json doc;
    doc["status"] = to_string(result.status);
    const auto exists = result.exists();
    doc["exists"] = exists ? json(*exists) : json(nullptr);
    doc["matchings"] = json::array();
    for (const auto &m : result.matchings)
        doc["matchings"].push_back(matching_to_json(inst, m));
    if (with_stats)
        doc["stats"] = stats_to_json(result.stats);
    return doc;
}

json min_bp_to_json(const Instance &inst, const MinBpResult &result, bool with_stats)
{
    json doc;
    doc["optimal"] = result.optimal;
    if (result.matching) {
        doc["blocking_count"] = result.blocking_count;
        doc["opt_measure"] = result.opt_measure();
        doc["matching"] = matching_to_json(inst, *result.matching);
    }
    else {
        doc["blocking_count"] = nullptr;
        doc["opt_measure"] = nullptr;
        doc["matching"] = nullptr;
    }
    if (with_stats)
        doc["stats"] = stats_to_json(result.stats);
    return doc;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string &path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary);
    if (! out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

} // namespace tap
