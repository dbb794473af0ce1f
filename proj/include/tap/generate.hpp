#pragma once

#include "tap/instance.hpp"

#include <cstdint>

namespace tap {

struct RandomInstanceOptions {
    int applicants = 6;
    int schools = 4;
    int subjects = 3;
    int max_list = 3;     // applicant list length is drawn from [1, max_list]
    int max_capacity = 2; // partial capacities are drawn from [0, max_capacity]
    PreferenceMode mode = PreferenceMode::linear;
    // Schools' lists restricted from a random applicant master list (one per
    // subject in subject-specific mode).
    bool applicant_master_list = false;
    // Applicants' lists restricted from a random school master list.
    bool school_master_list = false;
};

// Throws std::invalid_argument for out-of-range options. Output is a valid
// instance and depends only on (options, seed).
Instance random_instance(const RandomInstanceOptions &options, std::uint64_t seed);

// Subject names used by the generator: F, I, M, then S4, S5, ...
std::string generated_subject_name(int index);

} // namespace tap
