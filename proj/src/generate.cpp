#include "tap/generate.hpp"

#include "tap/random.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tap {

std::string generated_subject_name(int index)
{
    static const char *const first[] = {"F", "I", "M"};
    if (index < 3)
        return first[index];
    return "S" + std::to_string(index + 1);
}

namespace {

    std::vector<int> iota_vector(int n)
    {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 0);
        return v;
    }

    // Sorts `items` by their position in `order`.
    void order_by(std::vector<int> &items, const std::vector<int> &order)
    {
        std::vector<int> position(order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            position[order[i]] = static_cast<int>(i);
        std::sort(items.begin(), items.end(), [&](int x, int y) { return position[x] < position[y]; });
    }

} // namespace

Instance random_instance(const RandomInstanceOptions &options, std::uint64_t seed)
{
    if (options.applicants < 0 || options.schools < 0)
        throw std::invalid_argument("applicant and school counts must be nonnegative");
    if (options.subjects < 2)
        throw std::invalid_argument("at least two subjects are needed to form applicant types");
    if (options.max_list < 1)
        throw std::invalid_argument("max list length must be at least 1");
    if (options.max_capacity < 0)
        throw std::invalid_argument("max capacity must be nonnegative");

    Rng rng(seed);
    RawInstance raw;
    raw.mode = options.mode;
    for (int p = 0; p < options.subjects; ++p)
        raw.subjects.push_back(generated_subject_name(p));

    auto applicant_id = [](int a) { return "a" + std::to_string(a + 1); };
    auto school_id = [](int s) { return "s" + std::to_string(s + 1); };

    std::vector<int> school_master = iota_vector(options.schools);
    rng.shuffle(school_master);

    std::vector<std::pair<int, int>> types;
    std::vector<std::vector<int>> prefs(options.applicants);
    for (int a = 0; a < options.applicants; ++a) {
        const int p = rng.between(0, options.subjects - 1);
        int q = rng.between(0, options.subjects - 2);
        if (q >= p)
            ++q;
        types.emplace_back(p, q);

        auto pool = iota_vector(options.schools);
        rng.shuffle(pool);
        const int longest = std::min(options.max_list, options.schools);
        const int length = longest == 0 ? 0 : rng.between(1, longest);
        pool.resize(length);
        if (options.school_master_list)
            order_by(pool, school_master);
        prefs[a] = std::move(pool);
    }

    for (int a = 0; a < options.applicants; ++a) {
        RawApplicant out;
        out.id = applicant_id(a);
        out.type = {raw.subjects[types[a].first], raw.subjects[types[a].second]};
        for (int s : prefs[a])
            out.prefs.push_back(school_id(s));
        raw.applicants.push_back(std::move(out));
    }

    // One applicant master list per list the schools keep: a single one in
    // linear mode, one per subject otherwise.
    const int list_kinds = options.mode == PreferenceMode::linear ? 1 : options.subjects;
    std::vector<std::vector<int>> applicant_masters(list_kinds);
    for (auto &master : applicant_masters) {
        master = iota_vector(options.applicants);
        rng.shuffle(master);
    }

    for (int s = 0; s < options.schools; ++s) {
        RawSchool out;
        out.id = school_id(s);
        for (int p = 0; p < options.subjects; ++p) {
            const int cap = rng.chance(0.15) ? 0 : rng.between(std::min(1, options.max_capacity), options.max_capacity);
            out.capacities.emplace_back(raw.subjects[p], cap);
        }
        std::vector<int> acceptable;
        for (int a = 0; a < options.applicants; ++a)
            if (std::find(prefs[a].begin(), prefs[a].end(), s) != prefs[a].end())
                acceptable.push_back(a);

        auto ranked = [&](std::vector<int> list, int kind) {
            if (options.applicant_master_list)
                order_by(list, applicant_masters[kind]);
            else
                rng.shuffle(list);
            std::vector<std::string> ids;
            for (int a : list)
                ids.push_back(applicant_id(a));
            return ids;
        };

        if (options.mode == PreferenceMode::linear) {
            out.prefs = ranked(acceptable, 0);
        }
        else {
            out.prefs_by_subject.emplace();
            for (int p = 0; p < options.subjects; ++p) {
                std::vector<int> in_subject;
                for (int a : acceptable)
                    if (types[a].first == p || types[a].second == p)
                        in_subject.push_back(a);
                out.prefs_by_subject->emplace_back(raw.subjects[p], ranked(in_subject, p));
            }
        }
        raw.schools.push_back(std::move(out));
    }

    if (options.applicant_master_list) {
        if (options.mode == PreferenceMode::linear) {
            raw.master_list_applicants.emplace();
            for (int a : applicant_masters[0])
                raw.master_list_applicants->push_back(applicant_id(a));
        }
        else {
            raw.master_lists_by_subject.emplace();
            for (int p = 0; p < options.subjects; ++p) {
                std::vector<std::string> ids;
                for (int a : applicant_masters[p])
                    if (types[a].first == p || types[a].second == p)
                        ids.push_back(applicant_id(a));
                raw.master_lists_by_subject->emplace_back(raw.subjects[p], std::move(ids));
            }
        }
    }
    if (options.school_master_list) {
        raw.master_list_schools.emplace();
        for (int s : school_master)
            raw.master_list_schools->push_back(school_id(s));
    }

    return Instance::build(raw);
}

} // namespace tap
