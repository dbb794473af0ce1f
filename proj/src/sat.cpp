#include "tap/sat.hpp"

#include "tap/random.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace tap {

std::optional<std::string> check_223(const CnfFormula &f)
{
    if (f.variable_count < 0)
        return "negative variable count";
    std::vector<int> positive(f.variable_count + 1, 0), negative(f.variable_count + 1, 0);
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        const auto &clause = f.clauses[j];
        const std::string where = "clause " + std::to_string(j + 1);
        if (clause.size() != 3)
            return where + ": has " + std::to_string(clause.size()) + " literals, expected exactly 3";
        for (std::size_t t = 0; t < clause.size(); ++t) {
            const int v = std::abs(clause[t]);
            if (v == 0 || v > f.variable_count)
                return where + ": literal " + std::to_string(clause[t]) + " is out of range";
            for (std::size_t u = 0; u < t; ++u)
                if (std::abs(clause[u]) == v)
                    return where + ": variable " + std::to_string(v) + " appears twice";
            ++(clause[t] > 0 ? positive : negative)[v];
        }
    }
    for (int v = 1; v <= f.variable_count; ++v) {
        if (positive[v] != 2)
            return "variable " + std::to_string(v) + ": literal " + std::to_string(v) + " occurs " +
                std::to_string(positive[v]) + " times, expected 2";
        if (negative[v] != 2)
            return "variable " + std::to_string(v) + ": literal -" + std::to_string(v) + " occurs " +
                std::to_string(negative[v]) + " times, expected 2";
    }
    return std::nullopt;
}

void require_223(const CnfFormula &f)
{
    if (auto problem = check_223(f))
        throw FormulaError("not a (2,2)-E3-SAT formula: " + *problem);
}

bool literal_true(int literal, const Assignment &assignment)
{
    const bool value = assignment[std::abs(literal) - 1];
    return literal > 0 ? value : ! value;
}

bool satisfies(const CnfFormula &f, const Assignment &assignment)
{
    if (static_cast<int>(assignment.size()) != f.variable_count)
        return false;
    return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const auto &clause) {
        return std::any_of(clause.begin(), clause.end(), [&](int lit) { return literal_true(lit, assignment); });
    });
}

namespace {

    // Backtracking over variables in order. A clause is dead once every
    // literal is assigned and false; only clauses whose largest variable was
    // just set can die.
    class Backtracker {
      public:
        explicit Backtracker(const CnfFormula &f) : f_(f), values_(f.variable_count, false)
        {
            closing_.resize(f.variable_count + 1);
            for (std::size_t j = 0; j < f.clauses.size(); ++j) {
                int top = 0;
                for (int lit : f.clauses[j])
                    top = std::max(top, std::abs(lit));
                closing_[top].push_back(j);
            }
        }

        template <typename OnModel>
        void run(OnModel &&on_model)
        {
            // Empty clauses close at "variable 0" and make the formula unsatisfiable.
            for (auto j : closing_[0])
                if (! clause_alive(j))
                    return;
            descend(1, on_model);
        }

      private:
        bool clause_alive(std::size_t j) const
        {
            const auto &clause = f_.clauses[j];
            return std::any_of(clause.begin(), clause.end(), [&](int lit) { return literal_true(lit, values_); });
        }

        template <typename OnModel>
        bool descend(int v, OnModel &on_model)
        {
            if (v > f_.variable_count)
                return on_model(values_);
            for (bool value : {false, true}) {
                values_[v - 1] = value;
                bool ok = true;
                for (auto j : closing_[v])
                    if (! clause_alive(j)) {
                        ok = false;
                        break;
                    }
                if (ok && ! descend(v + 1, on_model))
                    return false;
            }
            values_[v - 1] = false;
            return true;
        }

        const CnfFormula &f_;
        Assignment values_;
        std::vector<std::vector<std::size_t>> closing_;
    };

} // namespace

std::optional<Assignment> sat_brute_force(const CnfFormula &f)
{
    std::optional<Assignment> model;
    Backtracker(f).run([&](const Assignment &values) {
        model = values;
        return false;
    });
    return model;
}

std::vector<Assignment> all_models(const CnfFormula &f)
{
    std::vector<Assignment> models;
    Backtracker(f).run([&](const Assignment &values) {
        models.push_back(values);
        return true;
    });
    return models;
}

CnfFormula parse_dimacs(std::string_view text)
{
    CnfFormula f;
    bool have_header = false;
    int declared_clauses = 0;
    std::vector<int> current;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = "line " + std::to_string(line_no);
        std::istringstream tokens(line);
        std::string first;
        if (! (tokens >> first) || first == "c" || first[0] == 'c')
            continue;
        if (first == "p") {
            std::string format;
            if (have_header)
                throw FormulaError(where + ": second header");
            if (! (tokens >> format >> f.variable_count >> declared_clauses) || format != "cnf")
                throw FormulaError(where + ": expected 'p cnf <variables> <clauses>'");
            if (f.variable_count < 0 || declared_clauses < 0)
                throw FormulaError(where + ": negative counts in header");
            have_header = true;
            continue;
        }
        if (! have_header)
            throw FormulaError(where + ": clause before 'p cnf' header");
        std::istringstream clause_tokens(line);
        std::string token;
        while (clause_tokens >> token) {
            char *end = nullptr;
            const long lit = std::strtol(token.c_str(), &end, 10);
            if (*end != '\0')
                throw FormulaError(where + ": bad literal '" + token + "'");
            if (lit == 0) {
                f.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (std::abs(lit) > f.variable_count)
                throw FormulaError(where + ": literal " + token + " exceeds declared variable count");
            current.push_back(static_cast<int>(lit));
        }
    }
    if (! have_header)
        throw FormulaError("missing 'p cnf' header");
    if (! current.empty())
        throw FormulaError("last clause is not terminated by 0");
    if (static_cast<int>(f.clauses.size()) != declared_clauses)
        throw FormulaError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
            std::to_string(f.clauses.size()));
    return f;
}

std::string to_dimacs(const CnfFormula &f)
{
    std::ostringstream out;
    out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
    for (const auto &clause : f.clauses) {
        for (int lit : clause)
            out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

CnfFormula random_223(int variable_count, std::uint64_t seed)
{
    if (variable_count < 3 || variable_count % 3 != 0)
        throw FormulaError("random_223: variable count must be a positive multiple of 3, got " +
            std::to_string(variable_count));

    Rng rng(seed);
    std::vector<int> slots;
    for (int v = 1; v <= variable_count; ++v)
        for (int lit : {v, v, -v, -v})
            slots.push_back(lit);
    rng.shuffle(slots);

    const std::size_t clause_count = slots.size() / 3;
    auto repeated_in = [&](std::size_t j) -> int {
        for (int t = 0; t < 3; ++t)
            for (int u = 0; u < t; ++u)
                if (std::abs(slots[3 * j + t]) == std::abs(slots[3 * j + u]))
                    return t;
        return -1;
    };

    constexpr int retry_cap = 1000;
    int retries = 0;
    for (std::size_t j = 0; j < clause_count;) {
        const int t = repeated_in(j);
        if (t < 0) {
            ++j;
            continue;
        }
        if (++retries > retry_cap)
            throw FormulaError("random_223: no valid formula after " + std::to_string(retry_cap) +
                " resamples (seed " + std::to_string(seed) + ")");
        // Swap the offending literal with a random slot elsewhere; counts are
        // preserved. Restart the scan since the other clause may now repeat.
        const std::size_t other = rng.below(slots.size());
        std::swap(slots[3 * j + t], slots[other]);
        j = 0;
    }

    CnfFormula f;
    f.variable_count = variable_count;
    for (std::size_t j = 0; j < clause_count; ++j)
        f.clauses.push_back({slots[3 * j], slots[3 * j + 1], slots[3 * j + 2]});
    return f;
}

} // namespace tap
