#include "tap/solvers.hpp"

#include "blocking_kernel.hpp"

#include <chrono>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tap {

const char *to_string(SearchStatus status)
{
    switch (status) {
    case SearchStatus::complete: return "complete";
    case SearchStatus::limit_reached: return "limit_reached";
    case SearchStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

    using Clock = std::chrono::steady_clock;

    double elapsed_ms(Clock::time_point since)
    {
        return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
    }

    // A node of the search tree: the first `depth` applicants are decided.
    struct Partial {
        int depth = 0;
        std::vector<SchoolIndex> school_of;
        std::vector<int> used; // [school * subjects + subject]
    };

    Partial root_of(const Instance &inst)
    {
        Partial p;
        p.school_of.assign(inst.applicant_count(), unassigned);
        p.used.assign(static_cast<std::size_t>(inst.school_count()) * inst.subject_count(), 0);
        return p;
    }

    // Visits children of a node in the fixed order: schools by preference,
    // then "unassigned". Children that overflow a partial capacity are skipped.
    template <typename Fn>
    bool for_each_child(const Instance &inst, Partial &node, Fn &&visit)
    {
        const ApplicantIndex a = node.depth;
        const auto type = inst.applicant(a).type;
        const int subjects = inst.subject_count();
        ++node.depth;
        for (int s : inst.applicant(a).prefs) {
            const auto &caps = inst.school(s).capacities;
            int &u1 = node.used[static_cast<std::size_t>(s) * subjects + type.first];
            int &u2 = node.used[static_cast<std::size_t>(s) * subjects + type.second];
            if (u1 >= caps[type.first] || u2 >= caps[type.second])
                continue;
            ++u1;
            ++u2;
            node.school_of[a] = s;
            const bool go_on = visit();
            node.school_of[a] = unassigned;
            --u1;
            --u2;
            if (! go_on) {
                --node.depth;
                return false;
            }
        }
        const bool go_on = visit();
        --node.depth;
        return go_on;
    }

    // Depth-first walk below one node. Nodes are numbered 1, 2, ... in visiting
    // order; the walk stops once `node_cap` nodes have been visited and another
    // one is due, or when the leaf callback returns false.
    class Walker {
      public:
        Walker(const Instance &inst, Partial start, std::uint64_t node_cap) :
            inst_(inst), node_(std::move(start)), node_cap_(node_cap)
        {
        }

        // LeafFn(span<const SchoolIndex> school_of, std::uint64_t node_index) -> bool
        template <typename LeafFn>
        void run(LeafFn &&on_leaf)
        {
            descend(on_leaf);
        }

        std::uint64_t nodes() const { return nodes_; }
        std::uint64_t leaves() const { return leaves_; }
        bool truncated() const { return truncated_; }

      private:
        template <typename LeafFn>
        bool descend(LeafFn &on_leaf)
        {
            if (nodes_ == node_cap_) {
                truncated_ = true;
                return false;
            }
            ++nodes_;
            if (node_.depth == inst_.applicant_count()) {
                ++leaves_;
                return on_leaf(std::span<const SchoolIndex>(node_.school_of), nodes_);
            }
            return for_each_child(inst_, node_, [&] { return descend(on_leaf); });
        }

        const Instance &inst_;
        Partial node_;
        std::uint64_t node_cap_;
        std::uint64_t nodes_ = 0;
        std::uint64_t leaves_ = 0;
        bool truncated_ = false;
    };

    // Subtree roots at a fixed depth, in serial visiting order, each tagged
    // with the number of shallower nodes the serial walk visits before it.
    struct Frontier {
        struct Root {
            Partial node;
            std::uint64_t top_before = 0;
        };
        std::vector<Root> roots;
        std::uint64_t top_nodes = 0;
    };

    Frontier frontier_at(const Instance &inst, int depth)
    {
        Frontier f;
        Partial node = root_of(inst);
        auto expand = [&](auto &self) -> bool {
            if (node.depth == depth) {
                f.roots.push_back({node, f.top_nodes});
                return true;
            }
            ++f.top_nodes;
            return for_each_child(inst, node, [&] { return self(self); });
        };
        expand(expand);
        return f;
    }

    std::size_t frontier_size(const Instance &inst, int depth, std::size_t stop_at)
    {
        std::size_t count = 0;
        Partial node = root_of(inst);
        auto expand = [&](auto &self) -> bool {
            if (node.depth == depth)
                return ++count < stop_at;
            return for_each_child(inst, node, [&] { return self(self); });
        };
        expand(expand);
        return count;
    }

    Frontier split_for_threads(const Instance &inst)
    {
        int threads = 1;
#ifdef _OPENMP
        threads = omp_get_max_threads();
#endif
        const std::size_t target = 8 * static_cast<std::size_t>(threads);
        int depth = 0;
        while (depth < inst.applicant_count() && frontier_size(inst, depth, target) < target)
            ++depth;
        return frontier_at(inst, depth);
    }

    // Per-leaf stability test with a reusable occupancy view.
    class LeafJudge {
      public:
        explicit LeafJudge(const Instance &inst) : view_(inst) {}

        int blocking_count(std::span<const SchoolIndex> school_of, int cap)
        {
            view_.rebuild(school_of);
            return detail::count_blocking_pairs(view_, school_of, cap);
        }

      private:
        detail::SchoolView view_;
    };

    struct Event {
        std::uint64_t node_index;
        int blocking_count;
        std::vector<SchoolIndex> school_of;
    };

    struct SubtreeResult {
        std::vector<Event> events;
        std::uint64_t size = 0;
        bool truncated = false;
        std::uint64_t leaves = 0;
    };

    SolveResult enumerate_serial(const Instance &inst, const SearchOptions &options)
    {
        SolveResult result;
        LeafJudge judge(inst);
        bool hit_limit = false;
        Walker walker(inst, root_of(inst), options.budget);
        walker.run([&](std::span<const SchoolIndex> school_of, std::uint64_t) {
            if (judge.blocking_count(school_of, 1) != 0)
                return true;
            result.matchings.push_back(Matching::from_assignment(inst, {school_of.begin(), school_of.end()}));
            if (options.limit && result.matchings.size() >= *options.limit) {
                hit_limit = true;
                return false;
            }
            return true;
        });
        result.stats.nodes = walker.nodes();
        result.stats.leaves = walker.leaves();
        result.status = hit_limit ? SearchStatus::limit_reached
            : walker.truncated()  ? SearchStatus::inconclusive
                                  : SearchStatus::complete;
        return result;
    }

    // Runs every frontier subtree independently, then replays their events in
    // serial order so that budget, limit and tie-breaking match the serial walk.
    template <typename LeafFn>
    std::vector<SubtreeResult> run_subtrees(const Instance &inst, const Frontier &frontier, std::uint64_t budget,
        LeafFn make_leaf_fn, SearchStats &stats)
    {
        const int count = static_cast<int>(frontier.roots.size());
        std::vector<SubtreeResult> results(count);
#pragma omp parallel for schedule(dynamic, 1)
        for (int k = 0; k < count; ++k) {
            Walker walker(inst, frontier.roots[k].node, budget);
            auto on_leaf = make_leaf_fn(results[k]);
            walker.run(on_leaf);
            results[k].size = walker.nodes();
            results[k].truncated = walker.truncated();
            results[k].leaves = walker.leaves();
        }
        stats.nodes = frontier.top_nodes;
        for (const auto &r : results) {
            stats.nodes += r.size;
            stats.leaves += r.leaves;
        }
        return results;
    }

    SolveResult enumerate_parallel(const Instance &inst, const SearchOptions &options)
    {
        SolveResult result;
        const Frontier frontier = split_for_threads(inst);
        auto results = run_subtrees(inst, frontier, options.budget,
            [&inst](SubtreeResult &out) {
                return [&out, judge = LeafJudge(inst)](std::span<const SchoolIndex> school_of,
                           std::uint64_t index) mutable {
                    if (judge.blocking_count(school_of, 1) == 0)
                        out.events.push_back({index, 0, {school_of.begin(), school_of.end()}});
                    return true;
                };
            },
            result.stats);

        // Serial index of the last node of subtree k = top_before + sizes so far.
        std::uint64_t subtree_offset = 0;
        for (std::size_t k = 0; k < results.size(); ++k) {
            const std::uint64_t base = frontier.roots[k].top_before + subtree_offset;
            for (auto &e : results[k].events) {
                if (base + e.node_index > options.budget) {
                    result.status = SearchStatus::inconclusive;
                    return result;
                }
                result.matchings.push_back(Matching::from_assignment(inst, std::move(e.school_of)));
                if (options.limit && result.matchings.size() >= *options.limit) {
                    result.status = SearchStatus::limit_reached;
                    return result;
                }
            }
            if (results[k].truncated) {
                result.status = SearchStatus::inconclusive;
                return result;
            }
            subtree_offset += results[k].size;
        }
        const std::uint64_t total = frontier.top_nodes + subtree_offset;
        result.status = total > options.budget ? SearchStatus::inconclusive : SearchStatus::complete;
        return result;
    }

    MinBpResult min_bp_serial(const Instance &inst, std::uint64_t budget)
    {
        MinBpResult result;
        LeafJudge judge(inst);
        int incumbent = std::numeric_limits<int>::max();
        std::vector<SchoolIndex> best;
        bool have_best = false;
        bool found_zero = false;
        Walker walker(inst, root_of(inst), budget);
        walker.run([&](std::span<const SchoolIndex> school_of, std::uint64_t) {
            // Leaf-skip: counting stops once the incumbent is matched.
            const int count = judge.blocking_count(school_of, incumbent);
            if (count < incumbent) {
                incumbent = count;
                best.assign(school_of.begin(), school_of.end());
                have_best = true;
            }
            found_zero = incumbent == 0;
            return ! found_zero;
        });
        result.stats.nodes = walker.nodes();
        result.stats.leaves = walker.leaves();
        result.optimal = found_zero || ! walker.truncated();
        if (have_best) {
            result.matching = Matching::from_assignment(inst, best);
            result.blocking_count = incumbent;
        }
        return result;
    }

    MinBpResult min_bp_parallel(const Instance &inst, std::uint64_t budget)
    {
        MinBpResult result;
        const Frontier frontier = split_for_threads(inst);
        auto results = run_subtrees(inst, frontier, budget,
            [&inst](SubtreeResult &out) {
                return [&out, judge = LeafJudge(inst), incumbent = std::numeric_limits<int>::max()](
                           std::span<const SchoolIndex> school_of, std::uint64_t index) mutable {
                    const int count = judge.blocking_count(school_of, incumbent);
                    if (count < incumbent) {
                        incumbent = count;
                        out.events.push_back({index, count, {school_of.begin(), school_of.end()}});
                    }
                    return incumbent != 0;
                };
            },
            result.stats);

        int incumbent = std::numeric_limits<int>::max();
        std::vector<SchoolIndex> best;
        bool have_best = false;
        auto finish = [&](bool optimal) {
            result.optimal = optimal;
            if (have_best) {
                result.matching = Matching::from_assignment(inst, best);
                result.blocking_count = incumbent;
            }
            return result;
        };

        std::uint64_t subtree_offset = 0;
        for (std::size_t k = 0; k < results.size(); ++k) {
            const std::uint64_t base = frontier.roots[k].top_before + subtree_offset;
            for (auto &e : results[k].events) {
                if (base + e.node_index > budget)
                    return finish(false);
                if (e.blocking_count < incumbent) {
                    incumbent = e.blocking_count;
                    best = std::move(e.school_of);
                    have_best = true;
                    if (incumbent == 0)
                        return finish(true);
                }
            }
            if (results[k].truncated)
                return finish(false);
            subtree_offset += results[k].size;
        }
        return finish(frontier.top_nodes + subtree_offset <= budget);
    }

} // namespace

SolveResult enumerate_stable(const Instance &inst, const SearchOptions &options)
{
    if (options.limit == std::size_t{0})
        return SolveResult{SearchStatus::limit_reached, {}, {}};
    const auto start = Clock::now();
    SolveResult result =
        options.execution == Execution::parallel ? enumerate_parallel(inst, options) : enumerate_serial(inst, options);
    result.stats.wall_ms = elapsed_ms(start);
    return result;
}

MinBpResult min_blocking_pairs(const Instance &inst, std::uint64_t budget, Execution execution)
{
    const auto start = Clock::now();
    MinBpResult result =
        execution == Execution::parallel ? min_bp_parallel(inst, budget) : min_bp_serial(inst, budget);
    result.stats.wall_ms = elapsed_ms(start);
    return result;
}

} // namespace tap
