#pragma once

#include "tap/instance.hpp"
#include "tap/io.hpp"
#include "tap/matching.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#ifndef TAP_FIXTURE_DIR
#error "TAP_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace tap::testing {

inline std::string fixture_path(const std::string &name) { return std::string(TAP_FIXTURE_DIR) + "/" + name; }

inline Instance load_instance(const std::string &name) { return parse_instance(read_file(fixture_path(name))); }

inline Matching load_matching(const Instance &inst, const std::string &name)
{
    return parse_matching(inst, read_file(fixture_path(name)));
}

using PairList = std::vector<std::pair<std::string, std::string>>;

inline PairList sorted_pairs(const Instance &inst, const Matching &m)
{
    auto p = m.pairs(inst);
    std::sort(p.begin(), p.end());
    return p;
}

// The sub-instance induced by the given applicants and schools: lists are
// restricted to kept agents, capacities are unchanged, master lists dropped.
inline RawInstance induced(const Instance &inst, const std::vector<std::string> &applicants,
    const std::vector<std::string> &schools)
{
    const std::set<std::string> keep_a(applicants.begin(), applicants.end());
    const std::set<std::string> keep_s(schools.begin(), schools.end());
    auto filter = [](const std::vector<std::string> &ids, const std::set<std::string> &keep) {
        std::vector<std::string> out;
        for (const auto &id : ids)
            if (keep.count(id))
                out.push_back(id);
        return out;
    };

    const RawInstance raw = inst.to_raw();
    RawInstance out;
    out.mode = raw.mode;
    out.subjects = raw.subjects;
    for (const auto &a : raw.applicants)
        if (keep_a.count(a.id))
            out.applicants.push_back({a.id, a.type, filter(a.prefs, keep_s)});
    for (const auto &s : raw.schools) {
        if (! keep_s.count(s.id))
            continue;
        RawSchool copy = s;
        if (copy.prefs)
            copy.prefs = filter(*s.prefs, keep_a);
        if (copy.prefs_by_subject)
            for (auto &[subject, ids] : *copy.prefs_by_subject)
                ids = filter(ids, keep_a);
        out.schools.push_back(std::move(copy));
    }
    return out;
}

// Adds school `id` as the new first choice of `applicant`, with room for
// exactly her type and ranking only her.
inline void add_outside_option(RawInstance &raw, const std::string &applicant, const std::string &id)
{
    auto it = std::find_if(raw.applicants.begin(), raw.applicants.end(),
        [&](const RawApplicant &a) { return a.id == applicant; });
    it->prefs.insert(it->prefs.begin(), id);
    RawSchool s;
    s.id = id;
    for (const auto &subject : raw.subjects) {
        const bool teaches = subject == it->type.first || subject == it->type.second;
        s.capacities.emplace_back(subject, teaches ? 1 : 0);
    }
    if (raw.mode == PreferenceMode::linear) {
        s.prefs = std::vector<std::string>{applicant};
    }
    else {
        s.prefs_by_subject.emplace();
        for (const auto &subject : raw.subjects) {
            const bool teaches = subject == it->type.first || subject == it->type.second;
            s.prefs_by_subject->emplace_back(subject, teaches ? std::vector<std::string>{applicant}
                                                              : std::vector<std::string>{});
        }
    }
    raw.schools.push_back(std::move(s));
}

} // namespace tap::testing
