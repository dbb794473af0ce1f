#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tap {

// Dense indices into an Instance. Ids (strings) are only used at the edges.
using SubjectIndex = int;
using ApplicantIndex = int;
using SchoolIndex = int;

inline constexpr int unassigned = -1;
inline constexpr int unranked = -1;

enum class PreferenceMode { linear, subject_specific };

const char *to_string(PreferenceMode mode);

// Raised for any structural problem found while building or parsing an instance.
class InstanceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Raised when an operation's input contract does not hold (missing master
// list, invalid matching handed to a stability check, and so on).
class PreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// String-keyed description of an instance, as it appears in a document or as a
// reduction emits it. Instance::build resolves and validates it.
struct RawApplicant {
    std::string id;
    std::pair<std::string, std::string> type;
    std::vector<std::string> prefs;
};

struct RawSchool {
    std::string id;
    // Subject -> partial capacity. Subjects not listed default to 0.
    std::vector<std::pair<std::string, int>> capacities;
    std::optional<std::vector<std::string>> prefs;
    std::optional<std::vector<std::pair<std::string, std::vector<std::string>>>> prefs_by_subject;
};

struct RawInstance {
    PreferenceMode mode = PreferenceMode::linear;
    std::vector<std::string> subjects;
    std::vector<RawApplicant> applicants;
    std::vector<RawSchool> schools;
    std::optional<std::vector<std::string>> master_list_applicants;
    std::optional<std::vector<std::string>> master_list_schools;
    std::optional<std::vector<std::pair<std::string, std::vector<std::string>>>> master_lists_by_subject;
};

struct ApplicantType {
    SubjectIndex first;
    SubjectIndex second;

    bool contains(SubjectIndex p) const { return first == p || second == p; }
    // Unordered comparison: {F, M} and {M, F} are the same type.
    bool same_as(ApplicantType other) const
    {
        return (first == other.first && second == other.second) || (first == other.second && second == other.first);
    }
};

struct Applicant {
    std::string id;
    ApplicantType type;
    std::vector<SchoolIndex> prefs;
};

struct School {
    std::string id;
    std::vector<int> capacities;                         // indexed by subject
    std::vector<ApplicantIndex> prefs;                   // linear mode only
    std::vector<std::vector<ApplicantIndex>> prefs_by_subject; // subject-specific mode only, indexed by subject
};

// A validated, immutable TAP / TAP-SS instance with precomputed rank tables.
class Instance {
  public:
    // Resolves ids and enforces every structural rule; throws InstanceError.
    static Instance build(const RawInstance &raw);

    RawInstance to_raw() const;

    PreferenceMode mode() const { return mode_; }
    const std::vector<std::string> &subjects() const { return subjects_; }
    const std::vector<Applicant> &applicants() const { return applicants_; }
    const std::vector<School> &schools() const { return schools_; }

    int subject_count() const { return static_cast<int>(subjects_.size()); }
    int applicant_count() const { return static_cast<int>(applicants_.size()); }
    int school_count() const { return static_cast<int>(schools_.size()); }

    const Applicant &applicant(ApplicantIndex a) const { return applicants_[a]; }
    const School &school(SchoolIndex s) const { return schools_[s]; }

    std::optional<SubjectIndex> find_subject(const std::string &id) const;
    std::optional<ApplicantIndex> find_applicant(const std::string &id) const;
    std::optional<SchoolIndex> find_school(const std::string &id) const;

    // Position of s in a's list, or `unranked` when s is not acceptable to a.
    int applicant_rank(ApplicantIndex a, SchoolIndex s) const
    {
        if (dense_)
            return applicant_rank_[static_cast<std::size_t>(a) * schools_.size() + s];
        const auto &prefs = applicants_[a].prefs;
        for (std::size_t r = 0; r < prefs.size(); ++r)
            if (prefs[r] == s)
                return static_cast<int>(r);
        return unranked;
    }

    bool acceptable(ApplicantIndex a, SchoolIndex s) const { return applicant_rank(a, s) != unranked; }

    // Position of a in the list school s uses for subject p. In linear mode
    // the subject is ignored and the single list is used.
    int school_rank(SchoolIndex s, ApplicantIndex a, SubjectIndex p) const
    {
        const std::size_t lists = mode_ == PreferenceMode::linear ? 1 : subjects_.size();
        const std::size_t k = mode_ == PreferenceMode::linear ? 0 : static_cast<std::size_t>(p);
        if (dense_)
            return school_rank_[(static_cast<std::size_t>(s) * lists + k) * applicants_.size() + a];
        const int r = applicant_rank(a, s);
        if (r == unranked)
            return unranked;
        return school_rank_[(static_cast<std::size_t>(edge_offset_[a]) + r) * lists + k];
    }

    // False when rank tables are stored per edge rather than densely.
    bool dense_ranks() const { return dense_; }

    const std::optional<std::vector<ApplicantIndex>> &master_list_applicants() const
    {
        return master_list_applicants_;
    }
    const std::optional<std::vector<SchoolIndex>> &master_list_schools() const { return master_list_schools_; }
    const std::optional<std::vector<std::vector<ApplicantIndex>>> &master_lists_by_subject() const
    {
        return master_lists_by_subject_;
    }

    // Structural equality over the raw content (ids, lists, capacities, master
    // lists). Applicant types compare as unordered pairs.
    friend bool operator==(const Instance &lhs, const Instance &rhs);

  private:
    Instance() = default;

    PreferenceMode mode_ = PreferenceMode::linear;
    std::vector<std::string> subjects_;
    std::vector<Applicant> applicants_;
    std::vector<School> schools_;
    std::optional<std::vector<ApplicantIndex>> master_list_applicants_;
    std::optional<std::vector<SchoolIndex>> master_list_schools_;
    std::optional<std::vector<std::vector<ApplicantIndex>>> master_lists_by_subject_;

    std::unordered_map<std::string, SubjectIndex> subject_lookup_;
    std::unordered_map<std::string, ApplicantIndex> applicant_lookup_;
    std::unordered_map<std::string, SchoolIndex> school_lookup_;

    // Rank tables are dense (O(1) lookups) up to this many entries; larger
    // instances store school ranks per (applicant, listed school) edge.
    static constexpr std::size_t dense_table_limit = std::size_t{1} << 24;
    bool dense_ = true;
    std::vector<std::int32_t> edge_offset_;
    std::vector<std::int32_t> applicant_rank_;
    std::vector<std::int32_t> school_rank_;
};

// True iff `list` appears inside `master` in the same relative order.
bool is_restriction_of(const std::vector<int> &list, const std::vector<int> &master);

} // namespace tap
