#include "tap/matching.hpp"

#include <algorithm>

namespace tap {

Matching::Matching(const Instance &inst) : school_of_(inst.applicant_count(), unassigned) {}

Matching Matching::from_pairs(const Instance &inst, const std::vector<std::pair<std::string, std::string>> &pairs)
{
    Matching m(inst);
    for (const auto &[applicant_id, school_id] : pairs) {
        auto a = inst.find_applicant(applicant_id);
        if (! a)
            throw PreconditionError("matching: unknown applicant '" + applicant_id + "'");
        auto s = inst.find_school(school_id);
        if (! s)
            throw PreconditionError("matching: unknown school '" + school_id + "'");
        if (m.assigned(*a))
            throw PreconditionError("matching: applicant '" + applicant_id + "' appears twice");
        m.assign(inst, *a, *s);
    }
    return m;
}

Matching Matching::from_assignment(const Instance &inst, std::vector<SchoolIndex> school_of)
{
    if (static_cast<int>(school_of.size()) != inst.applicant_count())
        throw PreconditionError("matching: assignment vector has the wrong length");
    Matching m(inst);
    for (int a = 0; a < inst.applicant_count(); ++a)
        if (school_of[a] != unassigned)
            m.assign(inst, a, school_of[a]);
    return m;
}

void Matching::assign(const Instance &inst, ApplicantIndex a, SchoolIndex s)
{
    if (! inst.acceptable(a, s))
        throw PreconditionError("matching: school '" + inst.school(s).id + "' is not acceptable to applicant '" +
            inst.applicant(a).id + "'");
    school_of_[a] = s;
}

int Matching::size() const
{
    return static_cast<int>(std::count_if(school_of_.begin(), school_of_.end(), [](int s) { return s != unassigned; }));
}

std::vector<std::pair<std::string, std::string>> Matching::pairs(const Instance &inst) const
{
    std::vector<std::pair<std::string, std::string>> out;
    for (int a = 0; a < inst.applicant_count(); ++a)
        if (assigned(a))
            out.emplace_back(inst.applicant(a).id, inst.school(school_of_[a]).id);
    return out;
}

std::vector<ApplicantIndex> SchoolOccupancy::by_type(const Instance &inst, SubjectIndex p, SubjectIndex r) const
{
    std::vector<ApplicantIndex> out;
    for (int a : members)
        if (inst.applicant(a).type.same_as({p, r}))
            out.push_back(a);
    return out;
}

SchoolOccupancy occupancy(const Instance &inst, const Matching &m, SchoolIndex s)
{
    SchoolOccupancy occ;
    occ.school = s;
    occ.by_subject.assign(inst.subject_count(), {});
    occ.used.assign(inst.subject_count(), 0);
    occ.capacity = inst.school(s).capacities;
    for (int a = 0; a < inst.applicant_count(); ++a) {
        if (m.school_of(a) != s)
            continue;
        occ.members.push_back(a);
        const auto type = inst.applicant(a).type;
        for (int p : {type.first, type.second}) {
            occ.by_subject[p].push_back(a);
            ++occ.used[p];
        }
    }
    return occ;
}

SchoolOccupancy occupancy(const Instance &inst, const Matching &m, const std::string &school_id)
{
    auto s = inst.find_school(school_id);
    if (! s)
        throw PreconditionError("occupancy: unknown school '" + school_id + "'");
    return occupancy(inst, m, *s);
}

ValidityReport validate_matching(const Instance &inst, const Matching &m)
{
    ValidityReport report;
    report.used.assign(inst.school_count(), std::vector<int>(inst.subject_count(), 0));
    for (int a = 0; a < inst.applicant_count(); ++a) {
        if (! m.assigned(a))
            continue;
        const auto type = inst.applicant(a).type;
        ++report.used[m.school_of(a)][type.first];
        ++report.used[m.school_of(a)][type.second];
    }
    for (int s = 0; s < inst.school_count(); ++s)
        for (int p = 0; p < inst.subject_count(); ++p)
            if (report.used[s][p] > inst.school(s).capacities[p])
                report.violations.push_back({s, p, report.used[s][p], inst.school(s).capacities[p]});
    return report;
}

ValidityReport validate_matching(const Instance &inst, const std::vector<std::pair<std::string, std::string>> &pairs)
{
    Matching m(inst);
    std::vector<std::pair<std::string, std::string>> rejected;
    for (const auto &[applicant_id, school_id] : pairs) {
        auto a = inst.find_applicant(applicant_id);
        if (! a)
            throw PreconditionError("matching: unknown applicant '" + applicant_id + "'");
        auto s = inst.find_school(school_id);
        if (! s)
            throw PreconditionError("matching: unknown school '" + school_id + "'");
        if (m.assigned(*a) || ! inst.acceptable(*a, *s)) {
            rejected.emplace_back(applicant_id, school_id);
            continue;
        }
        m.assign(inst, *a, *s);
    }
    auto report = validate_matching(inst, m);
    report.unacceptable = std::move(rejected);
    return report;
}

} // namespace tap
