#include "tap/instance.hpp"

#include <algorithm>
#include <unordered_set>

namespace tap {

const char *to_string(PreferenceMode mode)
{
    return mode == PreferenceMode::linear ? "linear" : "subject_specific";
}

bool is_restriction_of(const std::vector<int> &list, const std::vector<int> &master)
{
    auto it = master.begin();
    for (int x : list) {
        it = std::find(it, master.end(), x);
        if (it == master.end())
            return false;
        ++it;
    }
    return true;
}

namespace {

    [[noreturn]] void fail(const std::string &message) { throw InstanceError(message); }

    template <typename Lookup>
    int resolve(const Lookup &lookup, const std::string &id, const std::string &kind, const std::string &where)
    {
        auto it = lookup.find(id);
        if (it == lookup.end())
            fail(where + ": unknown " + kind + " '" + id + "'");
        return it->second;
    }

    std::string join(const std::vector<std::string> &ids)
    {
        std::string out;
        for (const auto &id : ids) {
            if (! out.empty())
                out += ",";
            out += id;
        }
        return out;
    }

    // Resolves a list of ids, rejecting duplicates.
    template <typename Lookup>
    std::vector<int> resolve_list(const Lookup &lookup, const std::vector<std::string> &ids, const std::string &kind,
        const std::string &where)
    {
        std::vector<int> out;
        out.reserve(ids.size());
        std::unordered_set<int> seen;
        for (const auto &id : ids) {
            int x = resolve(lookup, id, kind, where);
            if (! seen.insert(x).second)
                fail(where + ": " + kind + " '" + id + "' listed twice");
            out.push_back(x);
        }
        return out;
    }

    // `list` must contain exactly the members of `expected` (order free).
    void require_same_members(const std::vector<int> &list, std::vector<int> expected,
        const std::vector<std::string> &names, const std::string &where)
    {
        std::vector<int> got = list;
        std::sort(got.begin(), got.end());
        std::sort(expected.begin(), expected.end());
        if (got == expected)
            return;
        std::vector<std::string> missing, extra;
        for (int x : expected)
            if (! std::binary_search(got.begin(), got.end(), x))
                missing.push_back(names[x]);
        for (int x : got)
            if (! std::binary_search(expected.begin(), expected.end(), x))
                extra.push_back(names[x]);
        std::string message = where + ": list does not match its acceptable set";
        if (! extra.empty())
            message += "; ranks [" + join(extra) + "] who do not list it";
        if (! missing.empty())
            message += "; omits [" + join(missing) + "] who list it";
        fail(message);
    }

} // namespace

Instance Instance::build(const RawInstance &raw)
{
    Instance inst;
    inst.mode_ = raw.mode;

    if (raw.subjects.empty())
        fail("instance: subject set is empty");
    for (const auto &p : raw.subjects) {
        if (p.empty())
            fail("instance: empty subject name");
        if (! inst.subject_lookup_.emplace(p, static_cast<int>(inst.subjects_.size())).second)
            fail("instance: duplicate subject '" + p + "'");
        inst.subjects_.push_back(p);
    }
    const int subject_count = inst.subject_count();

    for (const auto &a : raw.applicants) {
        if (a.id.empty())
            fail("applicant: empty id");
        if (! inst.applicant_lookup_.emplace(a.id, static_cast<int>(inst.applicant_lookup_.size())).second)
            fail("applicant '" + a.id + "': duplicate id");
    }
    for (const auto &s : raw.schools) {
        if (s.id.empty())
            fail("school: empty id");
        if (! inst.school_lookup_.emplace(s.id, static_cast<int>(inst.school_lookup_.size())).second)
            fail("school '" + s.id + "': duplicate id");
    }

    std::vector<std::string> applicant_names, school_names;
    for (const auto &a : raw.applicants)
        applicant_names.push_back(a.id);
    for (const auto &s : raw.schools)
        school_names.push_back(s.id);

    for (const auto &a : raw.applicants) {
        const std::string where = "applicant '" + a.id + "'";
        Applicant applicant;
        applicant.id = a.id;
        applicant.type.first = resolve(inst.subject_lookup_, a.type.first, "subject", where);
        applicant.type.second = resolve(inst.subject_lookup_, a.type.second, "subject", where);
        if (applicant.type.first == applicant.type.second)
            fail(where + ": type must consist of two distinct subjects");
        applicant.prefs = resolve_list(inst.school_lookup_, a.prefs, "school", where);
        inst.applicants_.push_back(std::move(applicant));
    }

    const auto applicant_count = inst.applicants_.size();
    const auto school_count = raw.schools.size();
    const std::size_t lists_per_school = raw.mode == PreferenceMode::linear ? 1 : subject_count;

    // acceptable_by_school[s]: applicants listing s, in applicant order.
    std::vector<std::vector<int>> acceptable_by_school(school_count);
    inst.edge_offset_.assign(applicant_count + 1, 0);
    for (std::size_t a = 0; a < applicant_count; ++a) {
        const auto &prefs = inst.applicants_[a].prefs;
        inst.edge_offset_[a + 1] = inst.edge_offset_[a] + static_cast<std::int32_t>(prefs.size());
        for (int s : prefs)
            acceptable_by_school[s].push_back(static_cast<int>(a));
    }

    inst.dense_ = applicant_count * school_count * (1 + lists_per_school) <= dense_table_limit;
    if (inst.dense_) {
        inst.applicant_rank_.assign(applicant_count * school_count, unranked);
        for (std::size_t a = 0; a < applicant_count; ++a) {
            const auto &prefs = inst.applicants_[a].prefs;
            for (std::size_t r = 0; r < prefs.size(); ++r)
                inst.applicant_rank_[a * school_count + prefs[r]] = static_cast<std::int32_t>(r);
        }
        inst.school_rank_.assign(school_count * lists_per_school * applicant_count, unranked);
    }
    else {
        inst.school_rank_.assign(static_cast<std::size_t>(inst.edge_offset_.back()) * lists_per_school, unranked);
    }

    // Records that school si ranks applicant a at position r in list k.
    auto set_school_rank = [&](std::size_t si, std::size_t k, int a, std::size_t r) {
        if (inst.dense_) {
            inst.school_rank_[(si * lists_per_school + k) * applicant_count + a] = static_cast<std::int32_t>(r);
            return;
        }
        const auto &prefs = inst.applicants_[a].prefs;
        const auto it = std::find(prefs.begin(), prefs.end(), static_cast<int>(si));
        if (it == prefs.end())
            return;
        const auto edge = it - prefs.begin();
        inst.school_rank_[(inst.edge_offset_[a] + edge) * lists_per_school + k] = static_cast<std::int32_t>(r);
    };

    for (std::size_t si = 0; si < school_count; ++si) {
        const auto &s = raw.schools[si];
        const std::string where = "school '" + s.id + "'";
        School school;
        school.id = s.id;
        school.capacities.assign(subject_count, 0);
        std::vector<bool> seen_capacity(subject_count, false);
        for (const auto &[subject, value] : s.capacities) {
            int p = resolve(inst.subject_lookup_, subject, "subject", where);
            if (seen_capacity[p])
                fail(where + ": capacity for '" + subject + "' given twice");
            seen_capacity[p] = true;
            if (value < 0)
                fail(where + ": negative capacity for '" + subject + "'");
            school.capacities[p] = value;
        }

        const auto &acceptable = acceptable_by_school[si];

        if (raw.mode == PreferenceMode::linear) {
            if (! s.prefs || s.prefs_by_subject)
                fail(where + ": linear mode needs exactly one 'prefs' list");
            school.prefs = resolve_list(inst.applicant_lookup_, *s.prefs, "applicant", where);
            require_same_members(school.prefs, acceptable, applicant_names, where);
            for (std::size_t r = 0; r < school.prefs.size(); ++r)
                set_school_rank(si, 0, school.prefs[r], r);
        }
        else {
            if (s.prefs || ! s.prefs_by_subject)
                fail(where + ": subject-specific mode needs exactly one 'prefs_by_subject' map");
            school.prefs_by_subject.assign(subject_count, {});
            std::vector<bool> seen_subject(subject_count, false);
            for (const auto &[subject, ids] : *s.prefs_by_subject) {
                int p = resolve(inst.subject_lookup_, subject, "subject", where);
                if (seen_subject[p])
                    fail(where + ": list for '" + subject + "' given twice");
                seen_subject[p] = true;
                school.prefs_by_subject[p] = resolve_list(inst.applicant_lookup_, ids, "applicant", where);
            }
            for (int p = 0; p < subject_count; ++p) {
                std::vector<int> expected;
                for (int a : acceptable)
                    if (inst.applicants_[a].type.contains(p))
                        expected.push_back(a);
                require_same_members(school.prefs_by_subject[p], expected, applicant_names,
                    where + " subject '" + inst.subjects_[p] + "'");
                const auto &list = school.prefs_by_subject[p];
                for (std::size_t r = 0; r < list.size(); ++r)
                    set_school_rank(si, p, list[r], r);
            }
        }
        inst.schools_.push_back(std::move(school));
    }

    std::vector<int> all_applicants(applicant_count), all_schools(school_count);
    for (std::size_t i = 0; i < applicant_count; ++i)
        all_applicants[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < school_count; ++i)
        all_schools[i] = static_cast<int>(i);

    if (raw.master_list_applicants) {
        if (raw.mode != PreferenceMode::linear)
            fail("master_list_applicants: only meaningful in linear mode");
        auto master = resolve_list(inst.applicant_lookup_, *raw.master_list_applicants, "applicant",
            "master_list_applicants");
        require_same_members(master, all_applicants, applicant_names, "master_list_applicants");
        for (const auto &s : inst.schools_)
            if (! is_restriction_of(s.prefs, master))
                fail("school '" + s.id + "': list is not a restriction of master_list_applicants");
        inst.master_list_applicants_ = std::move(master);
    }

    if (raw.master_lists_by_subject) {
        if (raw.mode != PreferenceMode::subject_specific)
            fail("master_lists_by_subject: only meaningful in subject_specific mode");
        std::vector<std::vector<int>> masters(subject_count);
        std::vector<bool> seen(subject_count, false);
        for (const auto &[subject, ids] : *raw.master_lists_by_subject) {
            const std::string where = "master_lists_by_subject '" + subject + "'";
            int p = resolve(inst.subject_lookup_, subject, "subject", "master_lists_by_subject");
            if (seen[p])
                fail(where + ": given twice");
            seen[p] = true;
            masters[p] = resolve_list(inst.applicant_lookup_, ids, "applicant", where);
        }
        for (int p = 0; p < subject_count; ++p) {
            const std::string where = "master_lists_by_subject '" + inst.subjects_[p] + "'";
            std::vector<int> expected;
            for (std::size_t a = 0; a < applicant_count; ++a)
                if (inst.applicants_[a].type.contains(p))
                    expected.push_back(static_cast<int>(a));
            require_same_members(masters[p], expected, applicant_names, where);
            for (const auto &s : inst.schools_)
                if (! is_restriction_of(s.prefs_by_subject[p], masters[p]))
                    fail("school '" + s.id + "': list for '" + inst.subjects_[p] +
                        "' is not a restriction of its subject master list");
        }
        inst.master_lists_by_subject_ = std::move(masters);
    }

    if (raw.master_list_schools) {
        auto master = resolve_list(inst.school_lookup_, *raw.master_list_schools, "school", "master_list_schools");
        require_same_members(master, all_schools, school_names, "master_list_schools");
        for (const auto &a : inst.applicants_)
            if (! is_restriction_of(a.prefs, master))
                fail("applicant '" + a.id + "': list is not a restriction of master_list_schools");
        inst.master_list_schools_ = std::move(master);
    }

    return inst;
}

RawInstance Instance::to_raw() const
{
    RawInstance raw;
    raw.mode = mode_;
    raw.subjects = subjects_;
    for (const auto &a : applicants_) {
        RawApplicant out;
        out.id = a.id;
        out.type = {subjects_[a.type.first], subjects_[a.type.second]};
        for (int s : a.prefs)
            out.prefs.push_back(schools_[s].id);
        raw.applicants.push_back(std::move(out));
    }
    for (const auto &s : schools_) {
        RawSchool out;
        out.id = s.id;
        for (int p = 0; p < subject_count(); ++p)
            out.capacities.emplace_back(subjects_[p], s.capacities[p]);
        if (mode_ == PreferenceMode::linear) {
            out.prefs.emplace();
            for (int a : s.prefs)
                out.prefs->push_back(applicants_[a].id);
        }
        else {
            out.prefs_by_subject.emplace();
            for (int p = 0; p < subject_count(); ++p) {
                std::vector<std::string> ids;
                for (int a : s.prefs_by_subject[p])
                    ids.push_back(applicants_[a].id);
                out.prefs_by_subject->emplace_back(subjects_[p], std::move(ids));
            }
        }
        raw.schools.push_back(std::move(out));
    }
    if (master_list_applicants_) {
        raw.master_list_applicants.emplace();
        for (int a : *master_list_applicants_)
            raw.master_list_applicants->push_back(applicants_[a].id);
    }
    if (master_list_schools_) {
        raw.master_list_schools.emplace();
        for (int s : *master_list_schools_)
            raw.master_list_schools->push_back(schools_[s].id);
    }
    if (master_lists_by_subject_) {
        raw.master_lists_by_subject.emplace();
        for (int p = 0; p < subject_count(); ++p) {
            std::vector<std::string> ids;
            for (int a : (*master_lists_by_subject_)[p])
                ids.push_back(applicants_[a].id);
            raw.master_lists_by_subject->emplace_back(subjects_[p], std::move(ids));
        }
    }
    return raw;
}

std::optional<SubjectIndex> Instance::find_subject(const std::string &id) const
{
    auto it = subject_lookup_.find(id);
    if (it == subject_lookup_.end())
        return std::nullopt;
    return it->second;
}

std::optional<ApplicantIndex> Instance::find_applicant(const std::string &id) const
{
    auto it = applicant_lookup_.find(id);
    if (it == applicant_lookup_.end())
        return std::nullopt;
    return it->second;
}

std::optional<SchoolIndex> Instance::find_school(const std::string &id) const
{
    auto it = school_lookup_.find(id);
    if (it == school_lookup_.end())
        return std::nullopt;
    return it->second;
}

bool operator==(const Instance &lhs, const Instance &rhs)
{
    if (lhs.mode_ != rhs.mode_ || lhs.subjects_ != rhs.subjects_)
        return false;
    if (lhs.applicants_.size() != rhs.applicants_.size() || lhs.schools_.size() != rhs.schools_.size())
        return false;
    for (std::size_t a = 0; a < lhs.applicants_.size(); ++a) {
        const auto &x = lhs.applicants_[a];
        const auto &y = rhs.applicants_[a];
        if (x.id != y.id || ! x.type.same_as(y.type) || x.prefs != y.prefs)
            return false;
    }
    for (std::size_t s = 0; s < lhs.schools_.size(); ++s) {
        const auto &x = lhs.schools_[s];
        const auto &y = rhs.schools_[s];
        if (x.id != y.id || x.capacities != y.capacities || x.prefs != y.prefs ||
            x.prefs_by_subject != y.prefs_by_subject)
            return false;
    }
    return lhs.master_list_applicants_ == rhs.master_list_applicants_ &&
        lhs.master_list_schools_ == rhs.master_list_schools_ &&
        lhs.master_lists_by_subject_ == rhs.master_lists_by_subject_;
}

} // namespace tap
