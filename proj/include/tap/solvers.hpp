#pragma once

#include "tap/instance.hpp"
#include "tap/matching.hpp"
#include "tap/stability.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tap {

inline constexpr std::uint64_t default_node_budget = 10'000'000;

// Applicants in master-list order, each to the first school on her list that
// can still take both of her subjects. Requires linear mode and an applicant
// master list.
Matching serial_dictatorship(const Instance &inst);

// Schools in master-list order, each admitting still-free applicants from its
// own list while it has room in both of their subjects. Requires linear mode
// and a school master list.
Matching dual_serial_dictatorship(const Instance &inst);

enum class SearchStatus {
    complete,     // the whole tree was explored
    limit_reached, // stopped after collecting `limit` stable matchings
    inconclusive, // node budget exhausted first
};

const char *to_string(SearchStatus status);

struct SearchStats {
    std::uint64_t nodes = 0;  // partial assignments visited
    std::uint64_t leaves = 0; // complete matchings checked
    double wall_ms = 0.0;
};

struct SearchOptions {
    std::optional<std::size_t> limit;
    std::uint64_t budget = default_node_budget;
    Execution execution = Execution::serial;
};

struct SolveResult {
    SearchStatus status = SearchStatus::complete;
    std::vector<Matching> matchings;
    SearchStats stats;

    // Definite answers only: nullopt when inconclusive with nothing found.
    std::optional<bool> exists() const
    {
        if (! matchings.empty())
            return true;
        if (status == SearchStatus::inconclusive)
            return std::nullopt;
        return false;
    }
};

// Depth-first search over applicants in input order; each applicant tries her
// schools in preference order and then "unassigned". Only capacity pruning is
// applied, so every valid matching is exactly one leaf. Stable leaves are
// collected in visiting order. A parallel run reports the same matchings and
// status as the serial one.
SolveResult enumerate_stable(const Instance &inst, const SearchOptions &options = {});

struct MinBpResult {
    std::optional<Matching> matching;
    int blocking_count = 0;
    bool optimal = true;
    SearchStats stats;

    int opt_measure() const { return blocking_count + 1; }
};

// Minimum number of blocking pairs over all valid matchings; ties go to the
// first matching in search order. When the budget runs out the best matching
// seen so far is returned with optimal = false.
MinBpResult min_blocking_pairs(const Instance &inst, std::uint64_t budget = default_node_budget,
    Execution execution = Execution::serial);

} // namespace tap
