#pragma once

#include "tap/instance.hpp"
#include "tap/io.hpp"
#include "tap/matching.hpp"
#include "tap/sat.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tap {

// A stable matching of a reduced instance did not have the shape the
// construction guarantees (neither or both of T_i, F_i present, or an
// incomplete base matching). Indicates a checker or construction bug.
class WitnessError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ReductionKind { tap, tapss };

const char *to_string(ReductionKind kind);

using IdPair = std::pair<std::string, std::string>;

// One literal occurrence and the clause school it is wired to: c(x) = z_j for
// the TAP construction, s(x) = s_j^t for the TAP-SS one.
struct Occurrence {
    int clause = 0;   // 1-based
    int position = 0; // 1..3 within the clause
    int literal = 0;  // DIMACS literal
    std::string applicant;
    std::string school;
};

struct GadgetGroup {
    int index = 0; // variable (1-based) or clause (1-based)
    std::vector<std::string> applicants;
    std::vector<std::string> schools;
};

// TAP-SS only: the g(a) school and the two applicants added for base applicant a.
struct Augmentation {
    std::string applicant;
    std::string prime;
    std::string double_prime;
    std::string school;
};

struct VariablePairs {
    int variable = 0; // 1-based, as in the formula
    std::vector<IdPair> t_pairs;
    std::vector<IdPair> f_pairs;
};

struct ReductionBundle {
    ReductionKind kind;
    CnfFormula formula;
    Instance instance;
    std::vector<Occurrence> occurrences;
    std::vector<GadgetGroup> variable_gadgets;
    std::vector<GadgetGroup> clause_gadgets;
    std::vector<Augmentation> augmentations;
    std::vector<VariablePairs> ti_fi;
};

// Three-subject linear instance: per variable 22 applicants and 18 schools,
// one z-school per clause. Throws FormulaError unless the input is (2,2)-E3.
ReductionBundle reduce_to_tap(const CnfFormula &f);

// The stable matching built from a satisfying assignment (T_i or F_i per
// variable plus the fixed gadget pairs). Throws PreconditionError if the
// assignment does not satisfy the formula.
Matching tap_matching_from_assignment(const ReductionBundle &bundle, const Assignment &assignment);

// Reads v_i = true iff T_i is in m. Throws PreconditionError if m is not
// stable and WitnessError if neither or both of T_i, F_i are present.
Assignment tap_assignment_from_matching(const ReductionBundle &bundle, const Matching &m);

// Subject-specific instance with the g(a) augmentation, per-subject applicant
// master lists and a single school master list.
ReductionBundle reduce_to_tapss(const CnfFormula &f);

Matching tapss_matching_from_assignment(const ReductionBundle &bundle, const Assignment &assignment);
Assignment tapss_assignment_from_matching(const ReductionBundle &bundle, const Matching &m);

// k renamed copies ("<id>_c<copy>") over the shared subject set, no
// acceptability across copies; master lists are concatenated copy by copy.
Instance disjoint_union(const Instance &inst, int copies);

// Id suffix disjoint_union gives copy `copy` (1-based).
std::string copy_suffix(int copy);

json bundle_to_json(const ReductionBundle &bundle);

} // namespace tap
