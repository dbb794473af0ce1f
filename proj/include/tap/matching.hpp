#pragma once

#include "tap/instance.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tap {

// An assignment: each applicant holds at most one acceptable school.
// Capacity feasibility is checked separately by validate_matching.
class Matching {
  public:
    explicit Matching(const Instance &inst);

    // Throws PreconditionError on unknown ids, unacceptable pairs or an
    // applicant listed twice.
    static Matching from_pairs(const Instance &inst, const std::vector<std::pair<std::string, std::string>> &pairs);

    // Same checks over indices; a school of `unassigned` leaves the applicant free.
    static Matching from_assignment(const Instance &inst, std::vector<SchoolIndex> school_of);

    SchoolIndex school_of(ApplicantIndex a) const { return school_of_[a]; }
    bool assigned(ApplicantIndex a) const { return school_of_[a] != unassigned; }
    const std::vector<SchoolIndex> &assignment() const { return school_of_; }

    void assign(const Instance &inst, ApplicantIndex a, SchoolIndex s);
    void unassign(ApplicantIndex a) { school_of_[a] = unassigned; }

    int size() const;
    bool empty() const { return size() == 0; }

    // (applicant id, school id) in applicant input order.
    std::vector<std::pair<std::string, std::string>> pairs(const Instance &inst) const;

    friend bool operator==(const Matching &, const Matching &) = default;

  private:
    std::vector<SchoolIndex> school_of_;
};

// Derived views at one school: M(s), M_p(s), M_{p,r}(s) and per-subject usage.
struct SchoolOccupancy {
    SchoolIndex school = 0;
    std::vector<ApplicantIndex> members;                  // M(s), applicant input order
    std::vector<std::vector<ApplicantIndex>> by_subject; // M_p(s)
    std::vector<int> used;                                // |M_p(s)|
    std::vector<int> capacity;                            // c_p(s)

    bool undersubscribed(SubjectIndex p) const { return used[p] < capacity[p]; }
    // M_{p,r}(s): assignees whose type is exactly {p, r}.
    std::vector<ApplicantIndex> by_type(const Instance &inst, SubjectIndex p, SubjectIndex r) const;
};

SchoolOccupancy occupancy(const Instance &inst, const Matching &m, SchoolIndex s);

// Convenience: lookup by id, throws PreconditionError for an unknown school.
SchoolOccupancy occupancy(const Instance &inst, const Matching &m, const std::string &school_id);

struct CapacityViolation {
    SchoolIndex school;
    SubjectIndex subject;
    int used;
    int capacity;
};

struct ValidityReport {
    // used[s][p] = |M_p(s)|, for every school and subject.
    std::vector<std::vector<int>> used;
    std::vector<CapacityViolation> violations;
    // Pairs rejected before occupancy was counted (not acceptable, or the
    // applicant already appeared in an earlier pair).
    std::vector<std::pair<std::string, std::string>> unacceptable;

    bool is_matching() const { return violations.empty() && unacceptable.empty(); }
};

ValidityReport validate_matching(const Instance &inst, const Matching &m);

// Validates a raw pair list. Unknown ids throw PreconditionError; everything
// else lands in the report.
ValidityReport validate_matching(const Instance &inst, const std::vector<std::pair<std::string, std::string>> &pairs);

} // namespace tap
