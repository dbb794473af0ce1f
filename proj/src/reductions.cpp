#include "tap/reductions.hpp"

#include "tap/stability.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace tap {

const char *to_string(ReductionKind kind) { return kind == ReductionKind::tap ? "tap" : "tapss"; }

namespace {

    std::string name(std::initializer_list<std::string> parts)
    {
        std::string out;
        for (const auto &p : parts) {
            if (! out.empty())
                out += '_';
            out += p;
        }
        return out;
    }

    std::string num(int x) { return std::to_string(x); }

    // Small builder over RawInstance for the fixed three-subject constructions.
    struct ThreeSubjectBuilder {
        RawInstance raw;

        explicit ThreeSubjectBuilder(PreferenceMode mode)
        {
            raw.mode = mode;
            raw.subjects = {"F", "I", "M"};
        }

        void applicant(const std::string &id, const char *type, std::vector<std::string> prefs)
        {
            raw.applicants.push_back({id, {std::string(1, type[0]), std::string(1, type[1])}, std::move(prefs)});
        }

        RawSchool &school(const std::string &id, int f, int i, int m)
        {
            RawSchool s;
            s.id = id;
            s.capacities = {{"F", f}, {"I", i}, {"M", m}};
            raw.schools.push_back(std::move(s));
            return raw.schools.back();
        }

        void linear_school(const std::string &id, int f, int i, int m, std::vector<std::string> prefs)
        {
            school(id, f, i, m).prefs = std::move(prefs);
        }
    };

    // Literal occurrences in clause order, numbered per literal: occurrence
    // k (0 or 1) of literal v or -v.
    struct OccurrenceSlot {
        int clause;
        int position;
        int literal;
        int ordinal;
    };

    std::vector<OccurrenceSlot> occurrence_slots(const CnfFormula &f)
    {
        std::map<int, int> seen;
        std::vector<OccurrenceSlot> out;
        for (std::size_t j = 0; j < f.clauses.size(); ++j)
            for (std::size_t t = 0; t < f.clauses[j].size(); ++t) {
                const int lit = f.clauses[j][t];
                out.push_back({static_cast<int>(j) + 1, static_cast<int>(t) + 1, lit, seen[lit]++});
            }
        return out;
    }

    void require_satisfying(const ReductionBundle &bundle, const Assignment &assignment)
    {
        if (static_cast<int>(assignment.size()) != bundle.formula.variable_count)
            throw PreconditionError("assignment has " + std::to_string(assignment.size()) + " values, formula has " +
                std::to_string(bundle.formula.variable_count) + " variables");
        if (! satisfies(bundle.formula, assignment))
            throw PreconditionError("assignment does not satisfy the formula");
    }

    void add_pairs(const Instance &inst, Matching &m, const std::vector<IdPair> &pairs)
    {
        for (const auto &[a, s] : pairs)
            m.assign(inst, *inst.find_applicant(a), *inst.find_school(s));
    }

    bool contains_all(const Instance &inst, const Matching &m, const std::vector<IdPair> &pairs)
    {
        return std::all_of(pairs.begin(), pairs.end(), [&](const IdPair &p) {
            auto a = inst.find_applicant(p.first);
            auto s = inst.find_school(p.second);
            return a && s && m.school_of(*a) == *s;
        });
    }

    // Lemma-1 style dichotomy shared by both reductions.
    Assignment read_dichotomy(const ReductionBundle &bundle, const Matching &m, const char *what)
    {
        Assignment out(bundle.formula.variable_count, false);
        for (const auto &vp : bundle.ti_fi) {
            const bool t = contains_all(bundle.instance, m, vp.t_pairs);
            const bool f = contains_all(bundle.instance, m, vp.f_pairs);
            if (t == f)
                throw WitnessError(std::string(what) + ": variable " + std::to_string(vp.variable) +
                    (t ? " has both T_i and F_i" : " has neither T_i nor F_i") + " in the matching");
            out[vp.variable - 1] = t;
        }
        if (! satisfies(bundle.formula, out))
            throw WitnessError(std::string(what) + ": extracted assignment does not satisfy the formula");
        return out;
    }

} // namespace

// ---------------------------------------------------------------------------
// TAP, three subjects, capacities <= 2, applicant lists of length <= 3.

ReductionBundle reduce_to_tap(const CnfFormula &f)
{
    require_223(f);
    const int n = f.variable_count;
    const int m = static_cast<int>(f.clauses.size());

    auto a = [](int i, int k) { return name({"a", num(i), num(k)}); };
    auto x = [](int i, int k) { return name({"x", num(i), num(k)}); };
    auto y = [](int i, int k) { return name({"y", num(i), num(k)}); };
    auto q = [](int i, int l, int k) { return name({"q", num(i), num(l), num(k)}); };
    auto s = [](int i, const std::string &k) { return name({"s", num(i), k}); };
    auto w = [](int i, int l, int k) { return name({"w", num(i), num(l), num(k)}); };
    auto z = [](int j) { return name({"z", num(j)}); };

    // occurrence applicant (x_i^k or y_i^k) for every literal slot, and c(.)
    std::vector<Occurrence> occurrences;
    std::map<std::string, std::string> clause_school;
    std::vector<std::vector<std::string>> clause_members(m + 1);
    for (const auto &slot : occurrence_slots(f)) {
        const int i = std::abs(slot.literal);
        const std::string applicant = slot.literal > 0 ? x(i, slot.ordinal + 1) : y(i, slot.ordinal + 1);
        occurrences.push_back({slot.clause, slot.position, slot.literal, applicant, z(slot.clause)});
        clause_school[applicant] = z(slot.clause);
        clause_members[slot.clause].push_back(applicant);
    }

    ThreeSubjectBuilder b(PreferenceMode::linear);
    std::vector<GadgetGroup> variable_gadgets;
    std::vector<VariablePairs> ti_fi;

    for (int i = 1; i <= n; ++i) {
        const std::string sT = s(i, "T"), sF = s(i, "F");
        b.applicant(a(i, 1), "FI", {s(i, "1"), s(i, "3")});
        b.applicant(a(i, 2), "FI", {s(i, "2"), s(i, "4")});
        b.applicant(a(i, 3), "FM", {s(i, "1"), s(i, "2")});
        b.applicant(a(i, 4), "IM", {s(i, "2"), s(i, "1")});
        b.applicant(a(i, 5), "FI", {s(i, "3"), sT});
        b.applicant(a(i, 6), "FI", {s(i, "4"), sF});
        b.applicant(x(i, 1), "FM", {sT, clause_school.at(x(i, 1)), w(i, 3, 1)});
        b.applicant(x(i, 2), "IM", {sT, clause_school.at(x(i, 2)), w(i, 3, 2)});
        b.applicant(y(i, 1), "FM", {sF, clause_school.at(y(i, 1)), w(i, 3, 3)});
        b.applicant(y(i, 2), "IM", {sF, clause_school.at(y(i, 2)), w(i, 3, 4)});
        for (int k = 1; k <= 4; ++k) {
            b.applicant(q(i, 1, k), "FM", {w(i, 2, k), w(i, 1, k)});
            b.applicant(q(i, 2, k), "IM", {w(i, 1, k), w(i, 2, k)});
            b.applicant(q(i, 3, k), "FI", {w(i, 3, k), w(i, 1, k)});
        }

        GadgetGroup g;
        g.index = i;
        for (int k = 1; k <= 6; ++k)
            g.applicants.push_back(a(i, k));
        for (const auto &id : {x(i, 1), x(i, 2), y(i, 1), y(i, 2)})
            g.applicants.push_back(id);
        for (int k = 1; k <= 4; ++k)
            for (int l = 1; l <= 3; ++l)
                g.applicants.push_back(q(i, l, k));
        variable_gadgets.push_back(std::move(g));

        ti_fi.push_back({i, {{x(i, 1), sT}, {x(i, 2), sT}, {a(i, 6), sF}},
            {{y(i, 1), sF}, {y(i, 2), sF}, {a(i, 5), sT}}});
    }

    for (int i = 1; i <= n; ++i) {
        const std::string sT = s(i, "T"), sF = s(i, "F");
        b.linear_school(s(i, "1"), 1, 1, 2, {a(i, 4), a(i, 1), a(i, 3)});
        b.linear_school(s(i, "2"), 1, 1, 2, {a(i, 3), a(i, 2), a(i, 4)});
        b.linear_school(s(i, "3"), 1, 1, 0, {a(i, 1), a(i, 5)});
        b.linear_school(s(i, "4"), 1, 1, 0, {a(i, 2), a(i, 6)});
        b.linear_school(sT, 1, 1, 2, {a(i, 5), x(i, 1), x(i, 2)});
        b.linear_school(sF, 1, 1, 2, {a(i, 6), y(i, 1), y(i, 2)});
        const std::string occupant[] = {x(i, 1), x(i, 2), y(i, 1), y(i, 2)}; // A(w_{i,3}^k)
        for (int k = 1; k <= 4; ++k) {
            b.linear_school(w(i, 1, k), 1, 1, 2, {q(i, 1, k), q(i, 3, k), q(i, 2, k)});
            b.linear_school(w(i, 2, k), 1, 1, 2, {q(i, 2, k), q(i, 1, k)});
            b.linear_school(w(i, 3, k), 1, 1, 1, {occupant[k - 1], q(i, 3, k)});
        }

        auto &g = variable_gadgets[i - 1];
        for (const char *k : {"1", "2", "3", "4", "T", "F"})
            g.schools.push_back(s(i, k));
        for (int k = 1; k <= 4; ++k)
            for (int l = 1; l <= 3; ++l)
                g.schools.push_back(w(i, l, k));
    }

    std::vector<GadgetGroup> clause_gadgets;
    for (int j = 1; j <= m; ++j) {
        // z_j ranks its occurrence applicants by clause position.
        b.linear_school(z(j), 2, 2, 2, clause_members[j]);
        clause_gadgets.push_back({j, clause_members[j], {z(j)}});
    }

    return ReductionBundle{ReductionKind::tap, f, Instance::build(b.raw), std::move(occurrences),
        std::move(variable_gadgets), std::move(clause_gadgets), {}, std::move(ti_fi)};
}

Matching tap_matching_from_assignment(const ReductionBundle &bundle, const Assignment &assignment)
{
    if (bundle.kind != ReductionKind::tap)
        throw PreconditionError("bundle is not a TAP reduction");
    require_satisfying(bundle, assignment);
    const Instance &inst = bundle.instance;
    Matching m(inst);

    auto id = [](std::initializer_list<std::string> parts) { return name(parts); };
    std::map<std::string, std::string> clause_school;
    for (const auto &occ : bundle.occurrences)
        clause_school[occ.applicant] = occ.school;

    for (int i = 1; i <= bundle.formula.variable_count; ++i) {
        const std::string I = num(i);
        const auto &vp = bundle.ti_fi[i - 1];
        if (assignment[i - 1]) {
            add_pairs(inst, m, vp.t_pairs);
            add_pairs(inst, m,
                {{id({"y", I, "1"}), clause_school.at(id({"y", I, "1"}))},
                    {id({"y", I, "2"}), clause_school.at(id({"y", I, "2"}))}, {id({"a", I, "1"}), id({"s", I, "1"})},
                    {id({"a", I, "2"}), id({"s", I, "4"})}, {id({"a", I, "3"}), id({"s", I, "2"})},
                    {id({"a", I, "4"}), id({"s", I, "2"})}, {id({"a", I, "5"}), id({"s", I, "3"})}});
        }
        else {
            add_pairs(inst, m, vp.f_pairs);
            add_pairs(inst, m,
                {{id({"x", I, "1"}), clause_school.at(id({"x", I, "1"}))},
                    {id({"x", I, "2"}), clause_school.at(id({"x", I, "2"}))}, {id({"a", I, "1"}), id({"s", I, "3"})},
                    {id({"a", I, "2"}), id({"s", I, "2"})}, {id({"a", I, "3"}), id({"s", I, "1"})},
                    {id({"a", I, "4"}), id({"s", I, "1"})}, {id({"a", I, "6"}), id({"s", I, "4"})}});
        }
        for (int k = 1; k <= 4; ++k) {
            const std::string K = num(k);
            add_pairs(inst, m,
                {{id({"q", I, "1", K}), id({"w", I, "2", K})}, {id({"q", I, "2", K}), id({"w", I, "1", K})},
                    {id({"q", I, "3", K}), id({"w", I, "3", K})}});
        }
    }

    if (! validate_matching(inst, m).is_matching())
        throw WitnessError("constructed TAP witness violates a partial capacity");
    return m;
}

Assignment tap_assignment_from_matching(const ReductionBundle &bundle, const Matching &m)
{
    if (bundle.kind != ReductionKind::tap)
        throw PreconditionError("bundle is not a TAP reduction");
    if (! is_stable(bundle.instance, m))
        throw PreconditionError("matching is not stable");
    return read_dichotomy(bundle, m, "Lemma 1 violation");
}

// ---------------------------------------------------------------------------
// TAP-SS, three subjects, capacities <= 1, master lists on both sides.

ReductionBundle reduce_to_tapss(const CnfFormula &f)
{
    require_223(f);
    const int n = f.variable_count;
    const int m = static_cast<int>(f.clauses.size());

    auto x = [](int k) { return name({"x", num(k)}); };
    auto y = [](int k) { return name({"y", num(k)}); };
    auto q = [](int j) { return name({"q", num(j)}); };
    auto w = [](int j, int t) { return name({"w", num(j), num(t)}); };
    auto s = [](int j, int t) { return name({"s", num(j), num(t)}); };
    auto g = [](const std::string &a) { return "g_" + a; };
    auto prime = [](const std::string &a) { return a + "_p"; };
    auto double_prime = [](const std::string &a) { return a + "_pp"; };

    // s(x_{4i+r}): occurrences of v_i give r = 0, 1; of -v_i give r = 2, 3.
    std::vector<std::string> target(4 * n);
    std::vector<Occurrence> occurrences;
    for (const auto &slot : occurrence_slots(f)) {
        const int i = std::abs(slot.literal) - 1;
        const int r = (slot.literal > 0 ? 0 : 2) + slot.ordinal;
        target[4 * i + r] = s(slot.clause, slot.position);
        occurrences.push_back({slot.clause, slot.position, slot.literal, x(4 * i + r), target[4 * i + r]});
    }

    // School master list: <S_0> ... <S_{n-1}> <S^4> <G>.
    std::vector<std::string> school_master;
    for (int i = 0; i < n; ++i) {
        const int b = 4 * i;
        for (const auto &id : {y(b), target[b], target[b + 3], y(b + 3), target[b + 2], y(b + 1), target[b + 1],
                 y(b + 2)})
            school_master.push_back(id);
    }
    std::vector<std::string> s4;
    for (int j = 1; j <= m; ++j)
        s4.push_back(s(j, 4));
    std::sort(s4.begin(), s4.end());
    school_master.insert(school_master.end(), s4.begin(), s4.end());
    std::map<std::string, std::size_t> master_position;
    for (std::size_t k = 0; k < school_master.size(); ++k)
        master_position[school_master[k]] = k;

    struct Base {
        std::string id;
        const char *type;
        std::vector<std::string> prefs;
    };
    std::vector<Base> base;
    std::vector<GadgetGroup> variable_gadgets;
    for (int i = 0; i < n; ++i) {
        const int b = 4 * i;
        base.push_back({x(b), "FI", {y(b), target[b], y(b + 1)}});
        base.push_back({x(b + 1), "FI", {y(b + 1), target[b + 1], y(b + 2)}});
        base.push_back({x(b + 2), "FI", {y(b + 3), target[b + 2], y(b + 2)}});
        base.push_back({x(b + 3), "FI", {y(b), target[b + 3], y(b + 3)}});
        variable_gadgets.push_back({i + 1, {x(b), x(b + 1), x(b + 2), x(b + 3)}, {y(b), y(b + 1), y(b + 2), y(b + 3)}});
    }
    std::vector<GadgetGroup> clause_gadgets;
    for (int j = 1; j <= m; ++j) {
        std::vector<std::string> q_prefs = {s(j, 1), s(j, 2), s(j, 3)};
        std::sort(q_prefs.begin(), q_prefs.end(),
            [&](const auto &l, const auto &r) { return master_position.at(l) < master_position.at(r); });
        base.push_back({q(j), "FM", q_prefs});
        clause_gadgets.push_back({j, {q(j)}, {s(j, 1), s(j, 2), s(j, 3), s(j, 4)}});
    }
    for (int j = 1; j <= m; ++j)
        for (int t = 1; t <= 3; ++t) {
            base.push_back({w(j, t), "FM", {s(j, t), s(j, 4)}});
            clause_gadgets[j - 1].applicants.push_back(w(j, t));
        }

    // g(a) augmentation.
    std::vector<Augmentation> augmentations;
    std::vector<std::string> g_schools;
    for (auto &a : base) {
        a.prefs.push_back(g(a.id));
        augmentations.push_back({a.id, prime(a.id), double_prime(a.id), g(a.id)});
        g_schools.push_back(g(a.id));
    }
    std::sort(g_schools.begin(), g_schools.end());
    school_master.insert(school_master.end(), g_schools.begin(), g_schools.end());

    ThreeSubjectBuilder b(PreferenceMode::subject_specific);
    std::map<std::string, std::set<std::string>> acceptable_to; // school -> applicants
    std::map<std::string, std::string> type_of;
    auto add = [&](const std::string &id, const char *type, std::vector<std::string> prefs) {
        for (const auto &school : prefs)
            acceptable_to[school].insert(id);
        type_of[id] = type;
        b.applicant(id, type, std::move(prefs));
    };
    for (const auto &a : base)
        add(a.id, a.type, a.prefs);
    for (const auto &a : base) {
        const bool fi = std::string(a.type) == "FI";
        add(prime(a.id), fi ? "FM" : "FI", {g(a.id)});
        add(double_prime(a.id), "IM", {g(a.id)});
    }

    // Subject master lists.
    std::vector<std::string> X, Q, W, Xp, Xpp, Rp, Rpp;
    for (int k = 0; k < 4 * n; ++k) {
        X.push_back(x(k));
        Xp.push_back(prime(x(k)));
        Xpp.push_back(double_prime(x(k)));
    }
    for (int j = 1; j <= m; ++j) {
        Q.push_back(q(j));
        Rp.push_back(prime(q(j)));
        Rpp.push_back(double_prime(q(j)));
    }
    for (int j = 1; j <= m; ++j)
        for (int t = 1; t <= 3; ++t) {
            W.push_back(w(j, t));
            Rp.push_back(prime(w(j, t)));
            Rpp.push_back(double_prime(w(j, t)));
        }
    for (auto *v : {&Xp, &Xpp, &Rp, &Rpp})
        std::sort(v->begin(), v->end());
    const std::vector<std::string> X_rev(X.rbegin(), X.rend());
    const std::vector<std::string> W_rev(W.rbegin(), W.rend());

    auto concat = [](std::initializer_list<const std::vector<std::string> *> parts) {
        std::vector<std::string> out;
        for (const auto *p : parts)
            out.insert(out.end(), p->begin(), p->end());
        return out;
    };
    const std::vector<std::pair<std::string, std::vector<std::string>>> masters = {
        {"F", concat({&W, &X, &Q, &Xp, &Rp})},
        {"I", concat({&Xpp, &Rp, &Rpp, &X_rev})},
        {"M", concat({&Rpp, &Q, &W_rev, &Xp, &Xpp})},
    };

    auto ss_school = [&](const std::string &id, int fc, int ic, int mc) {
        auto &school = b.school(id, fc, ic, mc);
        school.prefs_by_subject.emplace();
        const auto &pool = acceptable_to[id];
        for (const auto &[subject, master] : masters) {
            std::vector<std::string> list;
            for (const auto &a : master)
                if (pool.count(a) && type_of[a].find(subject[0]) != std::string::npos)
                    list.push_back(a);
            school.prefs_by_subject->emplace_back(subject, std::move(list));
        }
    };
    for (int k = 0; k < 4 * n; ++k)
        ss_school(y(k), 1, 1, 0);
    for (int j = 1; j <= m; ++j) {
        for (int t = 1; t <= 3; ++t)
            ss_school(s(j, t), 1, 1, 1);
        ss_school(s(j, 4), 1, 0, 1);
    }
    for (const auto &a : base)
        ss_school(g(a.id), 1, 1, 1);

    b.raw.master_lists_by_subject = masters;
    b.raw.master_list_schools = school_master;

    std::vector<VariablePairs> ti_fi;
    for (int i = 0; i < n; ++i) {
        const int c = 4 * i;
        VariablePairs vp;
        vp.variable = i + 1;
        for (int r = 0; r <= 3; ++r)
            vp.t_pairs.emplace_back(x(c + r), y(c + r));
        for (int r = 0; r <= 2; ++r)
            vp.f_pairs.emplace_back(x(c + r), y(c + r + 1));
        vp.f_pairs.emplace_back(x(c + 3), y(c));
        ti_fi.push_back(std::move(vp));
    }

    return ReductionBundle{ReductionKind::tapss, f, Instance::build(b.raw), std::move(occurrences),
        std::move(variable_gadgets), std::move(clause_gadgets), std::move(augmentations), std::move(ti_fi)};
}

Matching tapss_matching_from_assignment(const ReductionBundle &bundle, const Assignment &assignment)
{
    if (bundle.kind != ReductionKind::tapss)
        throw PreconditionError("bundle is not a TAP-SS reduction");
    require_satisfying(bundle, assignment);
    const Instance &inst = bundle.instance;
    Matching m(inst);

    for (const auto &vp : bundle.ti_fi)
        add_pairs(inst, m, assignment[vp.variable - 1] ? vp.t_pairs : vp.f_pairs);

    for (std::size_t j = 0; j < bundle.formula.clauses.size(); ++j) {
        const auto &clause = bundle.formula.clauses[j];
        const std::string J = num(static_cast<int>(j) + 1);
        int chosen = 0;
        for (std::size_t t = 0; t < clause.size() && chosen == 0; ++t)
            if (literal_true(clause[t], assignment))
                chosen = static_cast<int>(t) + 1;
        add_pairs(inst, m, {{name({"q", J}), name({"s", J, num(chosen)})}, {name({"w", J, num(chosen)}), name({"s", J, "4"})}});
        for (int t = 1; t <= 3; ++t)
            if (t != chosen)
                add_pairs(inst, m, {{name({"w", J, num(t)}), name({"s", J, num(t)})}});
    }

    for (const auto &aug : bundle.augmentations)
        add_pairs(inst, m, {{aug.prime, aug.school}});

    if (! validate_matching(inst, m).is_matching())
        throw WitnessError("constructed TAP-SS witness violates a partial capacity");
    return m;
}

Assignment tapss_assignment_from_matching(const ReductionBundle &bundle, const Matching &m)
{
    if (bundle.kind != ReductionKind::tapss)
        throw PreconditionError("bundle is not a TAP-SS reduction");
    const Instance &inst = bundle.instance;
    if (! is_stable(inst, m))
        throw PreconditionError("matching is not stable");

    // Drop the (a', g(a)) pairs; what remains must cover every base applicant
    // with a school other than g(a).
    Matching base(inst);
    for (const auto &aug : bundle.augmentations) {
        const ApplicantIndex a = *inst.find_applicant(aug.applicant);
        const SchoolIndex g = *inst.find_school(aug.school);
        if (! m.assigned(a) || m.school_of(a) == g)
            throw WitnessError("dichotomy violation: base applicant '" + aug.applicant + "' is not placed above " +
                aug.school);
        base.assign(inst, a, m.school_of(a));
    }
    return read_dichotomy(bundle, base, "dichotomy violation");
}

// ---------------------------------------------------------------------------

std::string copy_suffix(int copy) { return "_c" + std::to_string(copy); }

Instance disjoint_union(const Instance &inst, int copies)
{
    if (copies < 1)
        throw PreconditionError("disjoint_union needs at least one copy");
    const RawInstance raw = inst.to_raw();
    RawInstance out;
    out.mode = raw.mode;
    out.subjects = raw.subjects;

    auto renamed = [](const std::vector<std::string> &ids, const std::string &suffix) {
        std::vector<std::string> r;
        for (const auto &id : ids)
            r.push_back(id + suffix);
        return r;
    };

    if (raw.master_list_applicants)
        out.master_list_applicants.emplace();
    if (raw.master_list_schools)
        out.master_list_schools.emplace();
    if (raw.master_lists_by_subject) {
        out.master_lists_by_subject.emplace();
        for (const auto &[subject, ids] : *raw.master_lists_by_subject)
            out.master_lists_by_subject->emplace_back(subject, std::vector<std::string>{});
    }

    for (int c = 1; c <= copies; ++c) {
        const std::string suffix = copy_suffix(c);
        for (const auto &a : raw.applicants)
            out.applicants.push_back({a.id + suffix, a.type, renamed(a.prefs, suffix)});
        for (const auto &s : raw.schools) {
            RawSchool copy = s;
            copy.id += suffix;
            if (copy.prefs)
                copy.prefs = renamed(*s.prefs, suffix);
            if (copy.prefs_by_subject)
                for (auto &[subject, ids] : *copy.prefs_by_subject)
                    ids = renamed(ids, suffix);
            out.schools.push_back(std::move(copy));
        }
        if (raw.master_list_applicants) {
            auto ids = renamed(*raw.master_list_applicants, suffix);
            out.master_list_applicants->insert(out.master_list_applicants->end(), ids.begin(), ids.end());
        }
        if (raw.master_list_schools) {
            auto ids = renamed(*raw.master_list_schools, suffix);
            out.master_list_schools->insert(out.master_list_schools->end(), ids.begin(), ids.end());
        }
        if (raw.master_lists_by_subject)
            for (std::size_t p = 0; p < raw.master_lists_by_subject->size(); ++p) {
                auto ids = renamed((*raw.master_lists_by_subject)[p].second, suffix);
                auto &dst = (*out.master_lists_by_subject)[p].second;
                dst.insert(dst.end(), ids.begin(), ids.end());
            }
    }
    return Instance::build(out);
}

json bundle_to_json(const ReductionBundle &bundle)
{
    json doc;
    doc["kind"] = to_string(bundle.kind);
    doc["formula"]["variables"] = bundle.formula.variable_count;
    doc["formula"]["clauses"] = bundle.formula.clauses;

    json occurrences = json::array();
    for (const auto &occ : bundle.occurrences) {
        json row;
        row["clause"] = occ.clause;
        row["position"] = occ.position;
        row["literal"] = occ.literal;
        row["applicant"] = occ.applicant;
        row["school"] = occ.school;
        occurrences.push_back(std::move(row));
    }
    doc["occurrence_map"] = std::move(occurrences);

    auto groups = [](const std::vector<GadgetGroup> &gs, const char *key) {
        json out = json::array();
        for (const auto &g : gs) {
            json row;
            row[key] = g.index;
            row["applicants"] = g.applicants;
            row["schools"] = g.schools;
            out.push_back(std::move(row));
        }
        return out;
    };
    doc["gadget_index"]["variables"] = groups(bundle.variable_gadgets, "variable");
    doc["gadget_index"]["clauses"] = groups(bundle.clause_gadgets, "clause");
    json aug = json::array();
    for (const auto &a : bundle.augmentations) {
        json row;
        row["applicant"] = a.applicant;
        row["prime"] = a.prime;
        row["double_prime"] = a.double_prime;
        row["school"] = a.school;
        aug.push_back(std::move(row));
    }
    doc["gadget_index"]["augmentation"] = std::move(aug);

    json pairs = json::array();
    for (const auto &vp : bundle.ti_fi) {
        json row;
        row["variable"] = vp.variable;
        row["T"] = json::array();
        row["F"] = json::array();
        for (const auto &[a, s] : vp.t_pairs)
            row["T"].push_back({a, s});
        for (const auto &[a, s] : vp.f_pairs)
            row["F"].push_back({a, s});
        pairs.push_back(std::move(row));
    }
    doc["ti_fi"] = std::move(pairs);
    return doc;
}

} // namespace tap
