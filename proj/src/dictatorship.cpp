#include "tap/solvers.hpp"

namespace tap {

namespace {

    class CapacityTracker {
      public:
        explicit CapacityTracker(const Instance &inst) :
            inst_(inst), used_(static_cast<std::size_t>(inst.school_count()) * inst.subject_count(), 0)
        {
        }

        // "s has enough capacity for a": free room in both of a's subjects.
        bool has_room(SchoolIndex s, ApplicantIndex a) const
        {
            const auto type = inst_.applicant(a).type;
            const auto &caps = inst_.school(s).capacities;
            return at(s, type.first) < caps[type.first] && at(s, type.second) < caps[type.second];
        }

        void take(SchoolIndex s, ApplicantIndex a)
        {
            const auto type = inst_.applicant(a).type;
            ++at(s, type.first);
            ++at(s, type.second);
        }

      private:
        int &at(SchoolIndex s, SubjectIndex p) { return used_[static_cast<std::size_t>(s) * inst_.subject_count() + p]; }
        int at(SchoolIndex s, SubjectIndex p) const
        {
            return used_[static_cast<std::size_t>(s) * inst_.subject_count() + p];
        }

        const Instance &inst_;
        std::vector<int> used_;
    };

} // namespace

Matching serial_dictatorship(const Instance &inst)
{
    if (inst.mode() != PreferenceMode::linear)
        throw PreconditionError("serial dictatorship needs a linear-mode instance");
    if (! inst.master_list_applicants())
        throw PreconditionError("serial dictatorship needs a master list of applicants");

    Matching m(inst);
    CapacityTracker capacity(inst);
    for (int a : *inst.master_list_applicants()) {
        for (int s : inst.applicant(a).prefs) {
            if (capacity.has_room(s, a)) {
                m.assign(inst, a, s);
                capacity.take(s, a);
                break;
            }
        }
    }
    return m;
}

Matching dual_serial_dictatorship(const Instance &inst)
{
    if (inst.mode() != PreferenceMode::linear)
        throw PreconditionError("dual serial dictatorship needs a linear-mode instance");
    if (! inst.master_list_schools())
        throw PreconditionError("dual serial dictatorship needs a master list of schools");

    Matching m(inst);
    CapacityTracker capacity(inst);
    for (int s : *inst.master_list_schools()) {
        for (int a : inst.school(s).prefs) {
            if (! m.assigned(a) && capacity.has_room(s, a)) {
                m.assign(inst, a, s);
                capacity.take(s, a);
            }
        }
    }
    return m;
}

} // namespace tap
