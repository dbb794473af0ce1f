#pragma once

#include "tap/instance.hpp"
#include "tap/matching.hpp"

#include <array>
#include <string>
#include <vector>

namespace tap {

// Serial is the reference path; parallel runs the same kernel under OpenMP
// and must produce identical output.
enum class Execution { serial, parallel };

// The four blocking conditions, numbered as (i)..(iv).
enum class Condition { i = 0, ii = 1, iii = 2, iv = 3 };

inline constexpr std::array<Condition, 4> all_conditions{Condition::i, Condition::ii, Condition::iii, Condition::iv};

const char *to_string(Condition c);

using ConditionMask = unsigned;

inline constexpr ConditionMask bit(Condition c) { return 1u << static_cast<unsigned>(c); }

struct BlockingPair {
    ApplicantIndex applicant = 0;
    SchoolIndex school = 0;
    ConditionMask conditions = 0;
    // witnesses[c]: the applicant(s) condition c dominates. Empty for (i),
    // one applicant for (ii) and (iii), the pair (b1, b2) for (iv).
    std::array<std::vector<ApplicantIndex>, 4> witnesses;

    bool satisfies(Condition c) const { return (conditions & bit(c)) != 0; }
    friend bool operator==(const BlockingPair &, const BlockingPair &) = default;
};

struct StabilityReport {
    std::vector<BlockingPair> blocking_pairs;
    bool stable = true;
    bool applicant_complete = false;
};

// Every blocking pair of m, under the definition selected by inst.mode(),
// ordered by applicant then school input order. Throws PreconditionError if
// m violates a partial capacity.
std::vector<BlockingPair> find_blocking_pairs(const Instance &inst, const Matching &m,
    Execution execution = Execution::serial);

StabilityReport check_stability(const Instance &inst, const Matching &m, Execution execution = Execution::serial);

bool is_stable(const Instance &inst, const Matching &m);

} // namespace tap
