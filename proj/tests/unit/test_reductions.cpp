#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "tap/reductions.hpp"
#include "tap/solvers.hpp"

#include <map>

using namespace tap;
using tap::testing::fixture_path;
using tap::testing::induced;
using tap::testing::load_instance;

namespace {

CnfFormula four_clause() { return parse_dimacs(read_file(fixture_path("four_clause.cnf"))); }

bool has_pair(const Instance &inst, const Matching &m, const std::string &a, const std::string &s)
{
    return m.school_of(*inst.find_applicant(a)) == *inst.find_school(s);
}

std::vector<std::string> school_ids(const Instance &inst, const std::vector<int> &xs)
{
    std::vector<std::string> out;
    for (int x : xs)
        out.push_back(inst.school(x).id);
    return out;
}

std::vector<std::string> applicant_ids(const Instance &inst, const std::vector<int> &xs)
{
    std::vector<std::string> out;
    for (int x : xs)
        out.push_back(inst.applicant(x).id);
    return out;
}

RawInstance renamed(RawInstance raw, const std::map<std::string, std::string> &names)
{
    auto r = [&](std::string &id) { id = names.at(id); };
    for (auto &a : raw.applicants) {
        r(a.id);
        for (auto &s : a.prefs)
            r(s);
    }
    for (auto &s : raw.schools) {
        r(s.id);
        if (s.prefs)
            for (auto &a : *s.prefs)
                r(a);
        if (s.prefs_by_subject)
            for (auto &[subject, ids] : *s.prefs_by_subject)
                for (auto &a : ids)
                    r(a);
    }
    return raw;
}

} // namespace

TEST_CASE("TAP reduction: sizes and structural audit")
{
    const auto bundle = reduce_to_tap(four_clause());
    const auto &inst = bundle.instance;
    CHECK(inst.applicant_count() == 66);
    CHECK(inst.school_count() == 58);
    CHECK(inst.subjects() == std::vector<std::string>{"F", "I", "M"});
    for (const auto &s : inst.schools())
        for (int c : s.capacities)
            CHECK(c <= 2);
    for (const auto &a : inst.applicants())
        CHECK(a.prefs.size() <= 3);
    CHECK(bundle.occurrences.size() == 12);
    CHECK(bundle.variable_gadgets.size() == 3);
    CHECK(bundle.variable_gadgets[0].applicants.size() == 22);
    CHECK(bundle.variable_gadgets[0].schools.size() == 18);
    CHECK(bundle.clause_gadgets.size() == 4);

    // z_j ranks the occurrence applicants by clause position.
    const auto &z2 = inst.school(*inst.find_school("z_2"));
    CHECK(applicant_ids(inst, z2.prefs) == std::vector<std::string>{"x_1_2", "y_2_1", "y_3_1"});
    const auto &x21 = inst.applicant(*inst.find_applicant("x_2_1"));
    CHECK(school_ids(inst, x21.prefs) == std::vector<std::string>{"s_2_T", "z_1", "w_2_3_1"});
    CHECK(applicant_ids(inst, inst.school(*inst.find_school("w_1_3_3")).prefs) ==
        std::vector<std::string>{"y_1_1", "q_1_3_3"});

    CHECK_THROWS_AS(reduce_to_tap({3, {{1, 2, 3}}}), FormulaError);
}

TEST_CASE("TAP reduction: witnesses for every model round-trip")
{
    const auto f = four_clause();
    const auto bundle = reduce_to_tap(f);
    const auto &inst = bundle.instance;
    for (const auto &model : all_models(f)) {
        const auto m = tap_matching_from_assignment(bundle, model);
        CHECK(is_stable(inst, m));
        CHECK(tap_assignment_from_matching(bundle, m) == model);
        for (const auto &vp : bundle.ti_fi) {
            const bool value = model[vp.variable - 1];
            for (const auto &[a, s] : vp.t_pairs)
                CHECK(has_pair(inst, m, a, s) == value);
            for (const auto &[a, s] : vp.f_pairs)
                CHECK(has_pair(inst, m, a, s) == ! value);
        }
        for (int a = 0; a < inst.applicant_count(); ++a)
            if (inst.applicant(a).id[0] == 'q')
                CHECK(inst.applicant_rank(a, m.school_of(a)) == 0);
    }
    CHECK_THROWS_AS(tap_matching_from_assignment(bundle, {false, false, false}), PreconditionError);
    CHECK_THROWS_AS(tap_matching_from_assignment(bundle, {true, true}), PreconditionError);
}

TEST_CASE("TAP reduction: a5 at s_T together with a6 at s_F is unstable")
{
    const auto bundle = reduce_to_tap(four_clause());
    const auto &inst = bundle.instance;
    auto m = tap_matching_from_assignment(bundle, {true, true, true});
    m.unassign(*inst.find_applicant("x_1_1"));
    m.unassign(*inst.find_applicant("x_1_2"));
    m.assign(inst, *inst.find_applicant("a_1_5"), *inst.find_school("s_1_T"));
    REQUIRE(validate_matching(inst, m).is_matching());
    CHECK(has_pair(inst, m, "a_1_6", "s_1_F"));
    CHECK_FALSE(is_stable(inst, m));
    CHECK_THROWS_AS(tap_assignment_from_matching(bundle, m), PreconditionError);
}

TEST_CASE("TAP reduction: the isolated q/w gadget is the fixture")
{
    const auto bundle = reduce_to_tap(four_clause());
    const auto raw = induced(bundle.instance, {"x_1_1", "q_1_1_1", "q_1_2_1", "q_1_3_1"},
        {"w_1_1_1", "w_1_2_1", "w_1_3_1"});
    const auto gadget = Instance::build(renamed(raw,
        {{"x_1_1", "x"}, {"q_1_1_1", "q1"}, {"q_1_2_1", "q2"}, {"q_1_3_1", "q3"}, {"w_1_1_1", "w1"},
            {"w_1_2_1", "w2"}, {"w_1_3_1", "w3"}}));
    CHECK(gadget == load_instance("gadgets/qw_bare.json"));
}

TEST_CASE("TAP-SS reduction: sizes and master lists")
{
    const auto bundle = reduce_to_tapss(four_clause());
    const auto &inst = bundle.instance;
    CHECK(inst.mode() == PreferenceMode::subject_specific);
    CHECK(inst.applicant_count() == 84);
    CHECK(inst.school_count() == 56);
    CHECK(bundle.augmentations.size() == 28);
    for (const auto &s : inst.schools())
        for (int c : s.capacities)
            CHECK(c <= 1);

    REQUIRE(inst.master_lists_by_subject().has_value());
    REQUIRE(inst.master_list_schools().has_value());
    for (const auto &s : inst.schools())
        for (int p = 0; p < inst.subject_count(); ++p)
            CHECK(is_restriction_of(s.prefs_by_subject[p], (*inst.master_lists_by_subject())[p]));
    for (const auto &a : inst.applicants())
        CHECK(is_restriction_of(a.prefs, *inst.master_list_schools()));

    // <S_0> for variable 1: occurrences v1 at (1,1),(2,1); -v1 at (3,1),(4,1).
    const auto &master = *inst.master_list_schools();
    CHECK(school_ids(inst, std::vector<int>(master.begin(), master.begin() + 8)) ==
        std::vector<std::string>{"y_0", "s_1_1", "s_4_1", "y_3", "s_3_1", "y_1", "s_2_1", "y_2"});

    CHECK(school_ids(inst, inst.applicant(*inst.find_applicant("x_2")).prefs) ==
        std::vector<std::string>{"y_3", "s_3_1", "y_2", "g_x_2"});
    CHECK(applicant_ids(inst, inst.school(*inst.find_school("g_x_0")).prefs_by_subject[0]) ==
        std::vector<std::string>{"x_0", "x_0_p"});
}

TEST_CASE("TAP-SS reduction: witnesses for every model round-trip")
{
    const auto f = four_clause();
    const auto bundle = reduce_to_tapss(f);
    const auto &inst = bundle.instance;
    for (const auto &model : all_models(f)) {
        const auto m = tapss_matching_from_assignment(bundle, model);
        CHECK(is_stable(inst, m));
        CHECK(tapss_assignment_from_matching(bundle, m) == model);
        for (const auto &aug : bundle.augmentations) {
            CHECK(has_pair(inst, m, aug.prime, aug.school));
            CHECK_FALSE(m.assigned(*inst.find_applicant(aug.double_prime)));
        }
    }
    // Smallest true position: clause 2 is (1 -2 -3), all-true makes position 1 true.
    const auto m = tapss_matching_from_assignment(bundle, {true, true, true});
    CHECK(has_pair(inst, m, "q_2", "s_2_1"));
    CHECK(has_pair(inst, m, "w_2_1", "s_2_4"));
    CHECK(has_pair(inst, m, "w_2_2", "s_2_2"));
    CHECK_THROWS_AS(tapss_matching_from_assignment(bundle, {false, false, false}), PreconditionError);
}

TEST_CASE("TAP-SS reduction: a base applicant at g(a) is unstable")
{
    const auto bundle = reduce_to_tapss(four_clause());
    const auto &inst = bundle.instance;
    auto m = tapss_matching_from_assignment(bundle, {true, true, true});
    m.unassign(*inst.find_applicant("x_0_p"));
    m.assign(inst, *inst.find_applicant("x_0"), *inst.find_school("g_x_0"));
    REQUIRE(validate_matching(inst, m).is_matching());
    CHECK_FALSE(is_stable(inst, m));
    CHECK_THROWS_AS(tapss_assignment_from_matching(bundle, m), PreconditionError);
}

TEST_CASE("TAP-SS reduction: the isolated g(a) gadgets are the fixtures")
{
    const auto bundle = reduce_to_tapss(four_clause());
    for (const auto &[base, fixture] : {std::pair<std::string, std::string>{"x_0", "gadgets/ga_fi_bare.json"},
             std::pair<std::string, std::string>{"q_1", "gadgets/ga_fm_bare.json"}}) {
        CAPTURE(base);
        const auto raw = induced(bundle.instance, {base, base + "_p", base + "_pp"}, {"g_" + base});
        const auto gadget = Instance::build(
            renamed(raw, {{base, "a"}, {base + "_p", "a_p"}, {base + "_pp", "a_pp"}, {"g_" + base, "g_a"}}));
        CHECK(gadget == load_instance(fixture));
    }
}

TEST_CASE("bundle document")
{
    const auto bundle = reduce_to_tapss(four_clause());
    const auto doc = bundle_to_json(bundle);
    CHECK(doc["kind"] == "tapss");
    CHECK(doc["occurrence_map"].size() == 12);
    CHECK(doc["gadget_index"]["augmentation"].size() == 28);
    CHECK(doc["ti_fi"].size() == 3);
    CHECK(doc["ti_fi"][0]["F"][3] == json::array({"x_3", "y_0"}));
}

TEST_CASE("disjoint union keeps master lists consistent")
{
    const auto toy = load_instance("sd_toy.json");
    const auto two = disjoint_union(toy, 2);
    CHECK(two.applicant_count() == 4);
    REQUIRE(two.master_list_applicants().has_value());
    CHECK(applicant_ids(two, *two.master_list_applicants()) ==
        std::vector<std::string>{"a1_c1", "a2_c1", "a1_c2", "a2_c2"});
    CHECK_FALSE(two.acceptable(*two.find_applicant("a1_c1"), *two.find_school("s1_c2")));
    const auto sd = serial_dictatorship(two);
    CHECK(sd.size() == 4);
    CHECK(is_stable(two, sd));

    const auto ss = disjoint_union(reduce_to_tapss(four_clause()).instance, 2);
    CHECK(ss.applicant_count() == 168);
}

TEST_CASE("TAP reduction as printed: a stable matching whose T/F reading is not a model")
{
    // x_1_1 parks at w_1_3_1 (q_1_1_1 and q_1_2_1 share w_1_2_1, which has
    // M-capacity 2), so clause 1 = (v3 v2 v1) is all-false yet z_1 is not
    // over-subscribed. Stability confirmed independently by the Python oracle.
    const auto f = parse_dimacs(read_file(fixture_path("tap_backward_counterexample.cnf")));
    const auto bundle = reduce_to_tap(f);
    const auto &inst = bundle.instance;
    const auto m = parse_matching(inst, read_file(fixture_path("tap_backward_counterexample_matching.json")));
    REQUIRE(validate_matching(inst, m).is_matching());
    CHECK(is_stable(inst, m));
    CHECK(has_pair(inst, m, "x_1_1", "w_1_3_1"));
    for (const auto &vp : bundle.ti_fi)
        for (const auto &[a, s] : vp.f_pairs)
            CHECK(has_pair(inst, m, a, s));
    CHECK_FALSE(satisfies(f, {false, false, false}));
    CHECK_THROWS_AS(tap_assignment_from_matching(bundle, m), WitnessError);
}
