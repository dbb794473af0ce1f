#include "tap/generate.hpp"
#include "tap/io.hpp"
#include "tap/reductions.hpp"
#include "tap/sat.hpp"
#include "tap/solvers.hpp"
#include "tap/stability.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum Exit { ok = 0, negative = 1, input_error = 2, inconclusive = 3 };

// Writes a document to --output or stdout.
void emit(const std::string &output, const std::string &text)
{
    if (output.empty())
        std::cout << text << std::flush;
    else
        tap::write_file(output, text);
}

tap::json status_document(const char *status)
{
    tap::json doc;
    doc["status"] = status;
    return doc;
}

struct CheckArgs {
    std::string instance, matching, output;
    bool parallel = false;
};

int run_check(const CheckArgs &args)
{
    const auto inst = tap::parse_instance(tap::read_file(args.instance));
    const auto pairs = tap::parse_matching_pairs(tap::read_file(args.matching));
    const auto validity = tap::validate_matching(inst, pairs);
    if (! validity.is_matching()) {
        emit(args.output, tap::to_document(tap::validity_to_json(inst, validity)));
        std::cerr << "tap: the matching violates a partial capacity or acceptability\n";
        return input_error;
    }
    const auto m = tap::Matching::from_pairs(inst, pairs);
    const auto report = tap::check_stability(
        inst, m, args.parallel ? tap::Execution::parallel : tap::Execution::serial);
    emit(args.output, tap::to_document(tap::stability_to_json(inst, report)));
    return report.stable ? ok : negative;
}

struct SolveArgs {
    std::string instance, algorithm = "exhaustive", output;
    std::uint64_t budget = tap::default_node_budget;
    bool all = false, stats = false, parallel = false;
};

int run_solve(const SolveArgs &args)
{
    const auto inst = tap::parse_instance(tap::read_file(args.instance));
    if (args.algorithm == "sd" || args.algorithm == "dsd") {
        const auto m = args.algorithm == "sd" ? tap::serial_dictatorship(inst) : tap::dual_serial_dictatorship(inst);
        emit(args.output, tap::serialize_matching(inst, m));
        return ok;
    }

    tap::SearchOptions options;
    options.budget = args.budget;
    options.execution = args.parallel ? tap::Execution::parallel : tap::Execution::serial;
    if (! args.all)
        options.limit = 1;
    const auto result = tap::enumerate_stable(inst, options);

    if (args.all || args.stats) {
        emit(args.output, tap::to_document(tap::solve_result_to_json(inst, result, args.stats)));
    }
    else if (! result.matchings.empty()) {
        emit(args.output, tap::serialize_matching(inst, result.matchings.front()));
    }
    else {
        emit(args.output,
            tap::to_document(status_document(
                result.status == tap::SearchStatus::inconclusive ? "inconclusive" : "no stable matching")));
    }
    const auto exists = result.exists();
    if (! exists)
        return inconclusive;
    if (args.all && result.status == tap::SearchStatus::inconclusive)
        return inconclusive;
    return *exists ? ok : negative;
}

struct MinBpArgs {
    std::string instance, output;
    std::uint64_t budget = tap::default_node_budget;
    bool stats = false, parallel = false;
};

int run_minbp(const MinBpArgs &args)
{
    const auto inst = tap::parse_instance(tap::read_file(args.instance));
    const auto result = tap::min_blocking_pairs(
        inst, args.budget, args.parallel ? tap::Execution::parallel : tap::Execution::serial);
    emit(args.output, tap::to_document(tap::min_bp_to_json(inst, result, args.stats)));
    return result.optimal ? ok : inconclusive;
}

struct ReduceArgs {
    std::string formula, variant = "tap", assignment, output, bundle, witness;
};

tap::Assignment read_assignment(const std::string &path)
{
    const std::string text = tap::read_file(path);
    tap::json doc;
    try {
        doc = tap::json::parse(text);
    }
    catch (const tap::json::parse_error &e) {
        throw tap::PreconditionError("assignment: syntax error at byte " + std::to_string(e.byte));
    }
    if (! doc.is_object() || ! doc.contains("values") || ! doc["values"].is_array())
        throw tap::PreconditionError("assignment: expected an object with a 'values' array of booleans");
    tap::Assignment out;
    for (const auto &v : doc["values"]) {
        if (! v.is_boolean())
            throw tap::PreconditionError("assignment: every value must be true or false");
        out.push_back(v.get<bool>());
    }
    return out;
}

int run_reduce(const ReduceArgs &args)
{
    const auto formula = tap::parse_dimacs(tap::read_file(args.formula));
    const bool tapss = args.variant == "tapss";
    const auto bundle = tapss ? tap::reduce_to_tapss(formula) : tap::reduce_to_tap(formula);

    std::optional<tap::Matching> witness;
    if (! args.assignment.empty()) {
        const auto assignment = read_assignment(args.assignment);
        witness = tapss ? tap::tapss_matching_from_assignment(bundle, assignment)
                        : tap::tap_matching_from_assignment(bundle, assignment);
        if (! tap::is_stable(bundle.instance, *witness))
            throw tap::WitnessError("witness matching is not stable");
    }

    emit(args.output, tap::serialize_instance(bundle.instance));

    // Sidecars: explicit paths win; otherwise they sit next to --output.
    const std::string bundle_path =
        ! args.bundle.empty() ? args.bundle : (args.output.empty() ? "" : args.output + ".bundle.json");
    if (! bundle_path.empty())
        tap::write_file(bundle_path, tap::to_document(tap::bundle_to_json(bundle)));
    if (witness) {
        const std::string witness_path =
            ! args.witness.empty() ? args.witness : (args.output.empty() ? "" : args.output + ".witness.json");
        if (witness_path.empty())
            std::cerr << "tap: witness is stable; pass --witness or --output to save it\n";
        else
            tap::write_file(witness_path, tap::serialize_matching(bundle.instance, *witness));
    }
    return ok;
}

struct GenArgs {
    std::string kind = "tap-random", output, mode = "linear";
    std::uint64_t seed = 0;
    tap::RandomInstanceOptions options;
    int variables = 3;
    bool master_list = false, school_master_list = false;
};

int run_gen(GenArgs args)
{
    if (args.kind == "formula") {
        emit(args.output, tap::to_dimacs(tap::random_223(args.variables, args.seed)));
        return ok;
    }
    args.options.mode = args.mode == "subject" ? tap::PreferenceMode::subject_specific : tap::PreferenceMode::linear;
    args.options.applicant_master_list = args.master_list;
    args.options.school_master_list = args.school_master_list;
    emit(args.output, tap::serialize_instance(tap::random_instance(args.options, args.seed)));
    return ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Teachers Assignment Problem solver"};
    app.require_subcommand(1);

    CheckArgs check;
    auto *check_cmd = app.add_subcommand("check", "Report the blocking pairs of a matching");
    check_cmd->add_option("--instance", check.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
    check_cmd->add_option("--matching", check.matching, "Matching JSON")->required()->check(CLI::ExistingFile);
    check_cmd->add_option("--output", check.output, "Write the report here instead of stdout");
    check_cmd->add_flag("--parallel", check.parallel, "Use the OpenMP kernel");

    SolveArgs solve;
    auto *solve_cmd = app.add_subcommand("solve", "Find a stable matching");
    solve_cmd->add_option("--instance", solve.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--algorithm", solve.algorithm, "sd, dsd or exhaustive")
        ->check(CLI::IsMember({"sd", "dsd", "exhaustive"}));
    solve_cmd->add_option("--budget", solve.budget, "Search node budget")->check(CLI::PositiveNumber);
    solve_cmd->add_flag("--all", solve.all, "Enumerate every stable matching");
    solve_cmd->add_flag("--stats", solve.stats, "Include search statistics");
    solve_cmd->add_flag("--parallel", solve.parallel, "Use the OpenMP search");
    solve_cmd->add_option("--output", solve.output, "Write the result here instead of stdout");

    MinBpArgs minbp;
    auto *minbp_cmd = app.add_subcommand("minbp", "Find a matching with the fewest blocking pairs");
    minbp_cmd->add_option("--instance", minbp.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
    minbp_cmd->add_option("--budget", minbp.budget, "Search node budget")->check(CLI::PositiveNumber);
    minbp_cmd->add_flag("--stats", minbp.stats, "Include search statistics");
    minbp_cmd->add_flag("--parallel", minbp.parallel, "Use the OpenMP search");
    minbp_cmd->add_option("--output", minbp.output, "Write the result here instead of stdout");

    ReduceArgs reduce;
    auto *reduce_cmd = app.add_subcommand("reduce", "Compile a (2,2)-E3-SAT formula into a TAP instance");
    reduce_cmd->add_option("--formula", reduce.formula, "DIMACS CNF")->required()->check(CLI::ExistingFile);
    reduce_cmd->add_option("--variant", reduce.variant, "tap or tapss")->check(CLI::IsMember({"tap", "tapss"}));
    reduce_cmd->add_option("--assignment", reduce.assignment, "JSON {\"values\": [bool, ...]}")
        ->check(CLI::ExistingFile);
    reduce_cmd->add_option("--output", reduce.output, "Instance path (sidecars go next to it)");
    reduce_cmd->add_option("--bundle", reduce.bundle, "Bundle sidecar path");
    reduce_cmd->add_option("--witness", reduce.witness, "Witness matching path");

    GenArgs gen;
    auto *gen_cmd = app.add_subcommand("gen", "Generate a random instance or formula");
    gen_cmd->add_option("--kind", gen.kind, "tap-random or formula")->check(CLI::IsMember({"tap-random", "formula"}));
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("--applicants", gen.options.applicants, "Number of applicants")->check(CLI::Range(0, 100000));
    gen_cmd->add_option("--schools", gen.options.schools, "Number of schools")->check(CLI::Range(0, 100000));
    gen_cmd->add_option("--subjects", gen.options.subjects, "Number of subjects")->check(CLI::Range(2, 1000));
    gen_cmd->add_option("--max-list", gen.options.max_list, "Longest applicant list")->check(CLI::Range(1, 100000));
    gen_cmd->add_option("--max-capacity", gen.options.max_capacity, "Largest partial capacity")
        ->check(CLI::Range(0, 1000000));
    gen_cmd->add_option("--mode", gen.mode, "linear or subject")->check(CLI::IsMember({"linear", "subject"}));
    gen_cmd->add_flag("--master-list", gen.master_list, "Derive school lists from applicant master lists");
    gen_cmd->add_flag("--school-master-list", gen.school_master_list, "Derive applicant lists from a school master list");
    gen_cmd->add_option("--variables", gen.variables, "Formula variables (positive multiple of 3)");
    gen_cmd->add_option("--output", gen.output, "Write the document here instead of stdout");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    try {
        if (*check_cmd)
            return run_check(check);
        if (*solve_cmd)
            return run_solve(solve);
        if (*minbp_cmd)
            return run_minbp(minbp);
        if (*reduce_cmd)
            return run_reduce(reduce);
        return run_gen(gen);
    }
    catch (const std::exception &e) {
        std::cerr << "tap: " << e.what() << '\n';
        return input_error;
    }
}
