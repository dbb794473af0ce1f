#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tap {

class FormulaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// CNF over variables 1..variable_count, literals in DIMACS convention
// (v or -v). Clause shape is not enforced here; check_223 decides whether the
// formula is a (2,2)-E3-SAT instance.
struct CnfFormula {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;

    friend bool operator==(const CnfFormula &, const CnfFormula &) = default;
};

// Truth values indexed by variable - 1.
using Assignment = std::vector<bool>;

// First violated (2,2)-E3 constraint with its location, or nullopt when the
// formula has exactly-3-literal clauses over distinct variables and every
// variable occurs exactly twice positively and twice negatively.
std::optional<std::string> check_223(const CnfFormula &f);

// Throws FormulaError with check_223's message.
void require_223(const CnfFormula &f);

bool literal_true(int literal, const Assignment &assignment);
bool satisfies(const CnfFormula &f, const Assignment &assignment);

// Lexicographically first model (false before true, variable 1 first) found
// by backtracking with clause-falsification pruning; nullopt if unsatisfiable.
std::optional<Assignment> sat_brute_force(const CnfFormula &f);

// Every model, in the same lexicographic order.
std::vector<Assignment> all_models(const CnfFormula &f);

// DIMACS subset: 'c' comments, one 'p cnf n m' header, clauses terminated by 0.
CnfFormula parse_dimacs(std::string_view text);
std::string to_dimacs(const CnfFormula &f);

// Seeded configuration-model sample of a (2,2)-E3 formula on n variables
// (n a positive multiple of 3, m = 4n/3 clauses).
CnfFormula random_223(int variable_count, std::uint64_t seed);

} // namespace tap
