#include "tap/stability.hpp"

#include "blocking_kernel.hpp"

namespace tap {

const char *to_string(Condition c)
{
    switch (c) {
    case Condition::i: return "i";
    case Condition::ii: return "ii";
    case Condition::iii: return "iii";
    case Condition::iv: return "iv";
    }
    return "?";
}

namespace {

    void require_matching(const Instance &inst, const Matching &m)
    {
        const auto report = validate_matching(inst, m);
        if (report.is_matching())
            return;
        const auto &v = report.violations.front();
        throw PreconditionError("not a matching: school '" + inst.school(v.school).id + "' holds " +
            std::to_string(v.used) + " applicants in subject '" + inst.subjects()[v.subject] + "' but has capacity " +
            std::to_string(v.capacity));
    }

    std::vector<BlockingPair> scan_serial(const detail::SchoolView &view, std::span<const SchoolIndex> school_of)
    {
        std::vector<BlockingPair> out;
        for (int a = 0; a < view.instance().applicant_count(); ++a)
            detail::blocking_pairs_of(view, school_of, a, true, out);
        return out;
    }

    std::vector<BlockingPair> scan_parallel(const detail::SchoolView &view, std::span<const SchoolIndex> school_of)
    {
        const int n = view.instance().applicant_count();
        std::vector<std::vector<BlockingPair>> per_applicant(n);
#pragma omp parallel for schedule(dynamic, 16)
        for (int a = 0; a < n; ++a)
            detail::blocking_pairs_of(view, school_of, a, true, per_applicant[a]);

        std::vector<BlockingPair> out;
        for (auto &chunk : per_applicant)
            for (auto &bp : chunk)
                out.push_back(std::move(bp));
        return out;
    }

} // namespace

std::vector<BlockingPair> find_blocking_pairs(const Instance &inst, const Matching &m, Execution execution)
{
    require_matching(inst, m);
    detail::SchoolView view(inst);
    view.rebuild(m.assignment());
    return execution == Execution::parallel ? scan_parallel(view, m.assignment())
                                            : scan_serial(view, m.assignment());
}

StabilityReport check_stability(const Instance &inst, const Matching &m, Execution execution)
{
    StabilityReport report;
    report.blocking_pairs = find_blocking_pairs(inst, m, execution);
    report.stable = report.blocking_pairs.empty();
    report.applicant_complete = m.size() == inst.applicant_count();
    return report;
}

bool is_stable(const Instance &inst, const Matching &m)
{
    require_matching(inst, m);
    detail::SchoolView view(inst);
    view.rebuild(m.assignment());
    return detail::count_blocking_pairs(view, m.assignment(), 1) == 0;
}

} // namespace tap
