#include "blocking_kernel.hpp"

#include <algorithm>
#include <limits>

namespace tap::detail {

SchoolView::SchoolView(const Instance &inst) :
    inst_(&inst),
    subject_count_(inst.subject_count()),
    members_(inst.school_count()),
    by_subject_(static_cast<std::size_t>(inst.school_count()) * inst.subject_count())
{
}

void SchoolView::rebuild(std::span<const SchoolIndex> school_of)
{
    for (auto &m : members_)
        m.clear();
    for (auto &m : by_subject_)
        m.clear();
    for (int a = 0; a < static_cast<int>(school_of.size()); ++a) {
        const SchoolIndex s = school_of[a];
        if (s == unassigned)
            continue;
        members_[s].push_back(a);
        const auto type = inst_->applicant(a).type;
        by_subject_[static_cast<std::size_t>(s) * subject_count_ + type.first].push_back(a);
        by_subject_[static_cast<std::size_t>(s) * subject_count_ + type.second].push_back(a);
    }
}

namespace {

    // Applicants in `pool` that s ranks below a in subject p.
    template <typename Fn>
    void for_each_beaten(const Instance &inst, SchoolIndex s, ApplicantIndex a, SubjectIndex p,
        const std::vector<ApplicantIndex> &pool, Fn &&fn)
    {
        const int rank_a = inst.school_rank(s, a, p);
        for (int b : pool)
            if (rank_a < inst.school_rank(s, b, p))
                fn(b);
    }

    bool beats_any(const Instance &inst, SchoolIndex s, ApplicantIndex a, SubjectIndex p,
        const std::vector<ApplicantIndex> &pool)
    {
        const int rank_a = inst.school_rank(s, a, p);
        return std::any_of(pool.begin(), pool.end(), [&](int b) { return rank_a < inst.school_rank(s, b, p); });
    }

    // Best-ranked (in subject p) applicant of `pool` that a beats, or -1.
    ApplicantIndex best_beaten(const Instance &inst, SchoolIndex s, ApplicantIndex a, SubjectIndex p,
        const std::vector<ApplicantIndex> &pool)
    {
        ApplicantIndex best = -1;
        int best_rank = std::numeric_limits<int>::max();
        for_each_beaten(inst, s, a, p, pool, [&](int b) {
            const int r = inst.school_rank(s, b, p);
            if (r < best_rank) {
                best_rank = r;
                best = b;
            }
        });
        return best;
    }

} // namespace

ConditionMask school_side_conditions(const SchoolView &view, ApplicantIndex a, SchoolIndex s)
{
    const Instance &inst = view.instance();
    const auto [p1, p2] = inst.applicant(a).type;
    const bool under1 = view.undersubscribed(s, p1);
    const bool under2 = view.undersubscribed(s, p2);
    const auto &in_p1 = view.members(s, p1);
    const auto &in_p2 = view.members(s, p2);

    ConditionMask mask = 0;
    if (under1 && under2)
        mask |= bit(Condition::i);

    if ((under1 && beats_any(inst, s, a, p2, in_p2)) || (under2 && beats_any(inst, s, a, p1, in_p1)))
        mask |= bit(Condition::ii);

    for (int b : view.members(s)) {
        if (inst.applicant(b).type.same_as({p1, p2}) && inst.school_rank(s, a, p1) < inst.school_rank(s, b, p1) &&
            inst.school_rank(s, a, p2) < inst.school_rank(s, b, p2)) {
            mask |= bit(Condition::iii);
            break;
        }
    }

    // (iv) needs b1 != b2; it fails only when both candidate sets are the
    // same single applicant.
    int count1 = 0, count2 = 0;
    ApplicantIndex only1 = -1, only2 = -1;
    for_each_beaten(inst, s, a, p1, in_p1, [&](int b) {
        ++count1;
        only1 = b;
    });
    if (count1 > 0) {
        for_each_beaten(inst, s, a, p2, in_p2, [&](int b) {
            ++count2;
            only2 = b;
        });
        if (count2 > 0 && (count1 > 1 || count2 > 1 || only1 != only2))
            mask |= bit(Condition::iv);
    }
    return mask;
}

void fill_witnesses(const SchoolView &view, BlockingPair &bp)
{
    const Instance &inst = view.instance();
    const ApplicantIndex a = bp.applicant;
    const SchoolIndex s = bp.school;
    const auto [p1, p2] = inst.applicant(a).type;

    if (bp.satisfies(Condition::ii)) {
        ApplicantIndex w = -1;
        if (view.undersubscribed(s, p1))
            w = best_beaten(inst, s, a, p2, view.members(s, p2));
        if (w < 0 && view.undersubscribed(s, p2))
            w = best_beaten(inst, s, a, p1, view.members(s, p1));
        bp.witnesses[static_cast<int>(Condition::ii)] = {w};
    }

    if (bp.satisfies(Condition::iii)) {
        ApplicantIndex best = -1;
        int best_rank = std::numeric_limits<int>::max();
        for (int b : view.members(s)) {
            if (! inst.applicant(b).type.same_as({p1, p2}))
                continue;
            const int r1 = inst.school_rank(s, b, p1);
            if (inst.school_rank(s, a, p1) < r1 && inst.school_rank(s, a, p2) < inst.school_rank(s, b, p2) &&
                r1 < best_rank) {
                best_rank = r1;
                best = b;
            }
        }
        bp.witnesses[static_cast<int>(Condition::iii)] = {best};
    }

    if (bp.satisfies(Condition::iv)) {
        auto ranked = [&](SubjectIndex p) {
            std::vector<ApplicantIndex> out;
            for_each_beaten(inst, s, a, p, view.members(s, p), [&](int b) { out.push_back(b); });
            std::sort(out.begin(), out.end(),
                [&](int x, int y) { return inst.school_rank(s, x, p) < inst.school_rank(s, y, p); });
            return out;
        };
        const auto c1 = ranked(p1);
        const auto c2 = ranked(p2);
        // Lexicographically smallest (rank of b1, rank of b2) with b1 != b2.
        for (int b1 : c1) {
            auto it = std::find_if(c2.begin(), c2.end(), [&](int b2) { return b2 != b1; });
            if (it != c2.end()) {
                bp.witnesses[static_cast<int>(Condition::iv)] = {b1, *it};
                break;
            }
        }
    }
}

void blocking_pairs_of(const SchoolView &view, std::span<const SchoolIndex> school_of, ApplicantIndex a,
    bool with_witnesses, std::vector<BlockingPair> &out)
{
    const Instance &inst = view.instance();
    std::vector<SchoolIndex> candidates;
    for (int s : inst.applicant(a).prefs)
        if (wants(inst, school_of, a, s))
            candidates.push_back(s);
    std::sort(candidates.begin(), candidates.end());
    for (int s : candidates) {
        const ConditionMask mask = school_side_conditions(view, a, s);
        if (mask == 0)
            continue;
        BlockingPair bp;
        bp.applicant = a;
        bp.school = s;
        bp.conditions = mask;
        if (with_witnesses)
            fill_witnesses(view, bp);
        out.push_back(std::move(bp));
    }
}

int count_blocking_pairs(const SchoolView &view, std::span<const SchoolIndex> school_of, int cap)
{
    const Instance &inst = view.instance();
    int count = 0;
    for (int a = 0; a < inst.applicant_count(); ++a) {
        for (int s : inst.applicant(a).prefs) {
            if (s == school_of[a])
                break; // the rest of her list is worse than her school
            if (school_side_conditions(view, a, s) != 0 && ++count >= cap)
                return count;
        }
    }
    return count;
}

} // namespace tap::detail
