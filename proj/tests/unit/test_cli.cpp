#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "tap/io.hpp"
#include "tap/sat.hpp"
#include "tap/stability.hpp"

#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

#ifndef TAP_CLI_PATH
#error "TAP_CLI_PATH must name the tap executable"
#endif
#ifndef TAP_GOLDEN_DIR
#error "TAP_GOLDEN_DIR must point at the golden outputs"
#endif

using namespace tap;
using tap::testing::fixture_path;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string &args)
{
    const std::string command = std::string(TAP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0)
        out.append(buffer, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fx(const std::string &name) { return fixture_path(name); }

std::string golden(const std::string &name) { return read_file(std::string(TAP_GOLDEN_DIR) + "/" + name); }

std::filesystem::path scratch()
{
    auto dir = std::filesystem::temp_directory_path() / "tap_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("check")
{
    const auto stable = run("check --instance " + fx("j3.json") + " --matching " + fx("j3_m2.json"));
    CHECK(stable.code == 0);
    CHECK(stable.out == golden("check_j3_m2.json"));

    const auto example = run("check --instance " + fx("j1.json") + " --matching " + fx("j1_example1_matching.json"));
    CHECK(example.code == 1);
    CHECK(example.out == golden("check_j1_example1.json"));
    CHECK(run("check --parallel --instance " + fx("j1.json") + " --matching " + fx("j1_example1_matching.json")).out ==
        example.out);

    const auto dir = scratch();
    write_file((dir / "bad.json").string(), "{\"pairs\": [[\"a1\"]]}");
    CHECK(run("check --instance " + fx("j1.json") + " --matching " + (dir / "bad.json").string()).code == 2);
    write_file((dir / "over.json").string(), "{\"pairs\": [[\"a1\", \"s1\"], [\"a2\", \"s1\"]]}");
    CHECK(run("check --instance " + fx("j1.json") + " --matching " + (dir / "over.json").string()).code == 2);
    CHECK(run("check --instance " + fx("missing.json") + " --matching " + fx("j3_m2.json")).code == 2);
}

TEST_CASE("solve")
{
    const auto none = run("solve --instance " + fx("j2.json") + " --algorithm exhaustive");
    CHECK(none.code == 1);
    CHECK(none.out == "{\n  \"status\": \"no stable matching\"\n}\n");

    CHECK(run("solve --instance " + fx("j1.json") + " --algorithm sd").code == 2);
    const auto sd = run("solve --instance " + fx("sd_toy.json") + " --algorithm sd");
    CHECK(sd.code == 0);
    CHECK(sd.out == golden("solve_sd_toy.json"));
    const auto dsd = run("solve --instance " + fx("dsd_toy.json") + " --algorithm dsd");
    CHECK(dsd.code == 0);
    CHECK(dsd.out == sd.out);

    const auto all = run("solve --instance " + fx("j3.json") + " --all");
    CHECK(all.code == 0);
    CHECK(all.out == golden("solve_j3_all.json"));
    CHECK(run("solve --parallel --instance " + fx("j3.json") + " --all").out == all.out);

    const auto starved = run("solve --instance " + fx("j2.json") + " --budget 1");
    CHECK(starved.code == 3);
    CHECK(starved.out == "{\n  \"status\": \"inconclusive\"\n}\n");

    const auto stats = json::parse(run("solve --instance " + fx("j3.json") + " --stats").out);
    CHECK(stats["stats"]["leaves"].get<int>() >= 1);
    CHECK(run("solve --instance " + fx("j3.json") + " --algorithm greedy").code == 2);
}

TEST_CASE("minbp")
{
    const auto j3 = run("minbp --instance " + fx("j3.json"));
    CHECK(j3.code == 0);
    CHECK(json::parse(j3.out)["blocking_count"] == 0);
    const auto j2 = run("minbp --instance " + fx("j2.json"));
    CHECK(j2.code == 0);
    CHECK(j2.out == golden("minbp_j2.json"));

    const auto dir = scratch();
    const auto big = (dir / "big.json").string();
    CHECK(run("gen --kind tap-random --applicants 40 --schools 10 --seed 3 --output " + big).code == 0);
    CHECK(run("minbp --instance " + big + " --budget 1").code == 3);
}

TEST_CASE("reduce")
{
    const auto dir = scratch();
    const auto out = (dir / "tap.json").string();
    CHECK(run("reduce --formula " + fx("four_clause.cnf") + " --variant tap --output " + out).code == 0);
    const auto inst = parse_instance(read_file(out));
    CHECK(inst.applicant_count() == 66);
    CHECK(std::filesystem::exists(out + ".bundle.json"));
    CHECK(run("reduce --formula " + fx("four_clause.cnf") + " --variant tap").out == golden("reduce_tap.json"));

    write_file((dir / "true.json").string(), "{\"values\": [true, true, true]}");
    const auto ss = (dir / "tapss.json").string();
    CHECK(run("reduce --formula " + fx("four_clause.cnf") + " --variant tapss --assignment " +
              (dir / "true.json").string() + " --output " + ss)
              .code == 0);
    const auto ss_inst = parse_instance(read_file(ss));
    CHECK(ss_inst.applicant_count() == 84);
    CHECK(is_stable(ss_inst, parse_matching(ss_inst, read_file(ss + ".witness.json"))));

    write_file((dir / "false.json").string(), "{\"values\": [false, false, false]}");
    CHECK(run("reduce --formula " + fx("four_clause.cnf") + " --variant tap --assignment " +
              (dir / "false.json").string())
              .code == 2);

    write_file((dir / "bad.cnf").string(), "p cnf 3 1\n1 2 3 0\n");
    CHECK(run("reduce --formula " + (dir / "bad.cnf").string() + " --variant tap").code == 2);
}

TEST_CASE("gen")
{
    const std::string args = "gen --kind tap-random --applicants 6 --schools 4 --subjects 3 --seed 7";
    const auto first = run(args);
    CHECK(first.code == 0);
    CHECK(run(args).out == first.out);
    CHECK_NOTHROW(parse_instance(first.out));

    const auto ml = run(args + " --master-list --school-master-list");
    CHECK(parse_instance(ml.out).master_list_applicants().has_value());
    CHECK(parse_instance(run(args + " --mode subject --master-list").out).mode() == PreferenceMode::subject_specific);

    const auto formula = run("gen --kind formula --variables 3 --seed 1");
    CHECK(formula.code == 0);
    CHECK_FALSE(check_223(parse_dimacs(formula.out)).has_value());
    CHECK(run("gen --kind formula --variables 5").code == 2);
    CHECK(run("gen --kind tap-random --subjects 1").code == 2);
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("check --instance " + fx("j1.json")).code == 2);
}
