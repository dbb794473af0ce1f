#pragma once

// Shared inner kernel for blocking-pair evaluation. Used by the stability
// checker and by the search leaves; not part of the public interface.

#include "tap/instance.hpp"
#include "tap/stability.hpp"

#include <span>
#include <vector>

namespace tap::detail {

// Per-school occupancy snapshot of an assignment vector, reusable across leaves.
class SchoolView {
  public:
    explicit SchoolView(const Instance &inst);

    void rebuild(std::span<const SchoolIndex> school_of);

    const std::vector<ApplicantIndex> &members(SchoolIndex s) const { return members_[s]; }
    const std::vector<ApplicantIndex> &members(SchoolIndex s, SubjectIndex p) const
    {
        return by_subject_[static_cast<std::size_t>(s) * subject_count_ + p];
    }
    int used(SchoolIndex s, SubjectIndex p) const
    {
        return static_cast<int>(members(s, p).size());
    }
    bool undersubscribed(SchoolIndex s, SubjectIndex p) const { return used(s, p) < inst_->school(s).capacities[p]; }

    const Instance &instance() const { return *inst_; }

  private:
    const Instance *inst_;
    int subject_count_;
    std::vector<std::vector<ApplicantIndex>> members_;
    std::vector<std::vector<ApplicantIndex>> by_subject_;
};

// True when a is unassigned or ranks s above her current school.
inline bool wants(const Instance &inst, std::span<const SchoolIndex> school_of, ApplicantIndex a, SchoolIndex s)
{
    const SchoolIndex current = school_of[a];
    if (current == s)
        return false;
    if (current == unassigned)
        return true;
    return inst.applicant_rank(a, s) < inst.applicant_rank(a, current);
}

// Conditions (i)..(iv) that (a, s) satisfies, ignoring the applicant side.
ConditionMask school_side_conditions(const SchoolView &view, ApplicantIndex a, SchoolIndex s);

// Fills in the deterministic witnesses for the conditions already in bp.
void fill_witnesses(const SchoolView &view, BlockingPair &bp);

// Blocking pairs of one applicant, in school input order.
void blocking_pairs_of(const SchoolView &view, std::span<const SchoolIndex> school_of, ApplicantIndex a,
    bool with_witnesses, std::vector<BlockingPair> &out);

// Number of blocking pairs, stopping as soon as `cap` is reached.
int count_blocking_pairs(const SchoolView &view, std::span<const SchoolIndex> school_of, int cap);

} // namespace tap::detail
