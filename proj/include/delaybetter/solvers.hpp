#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "model.hpp"
#include "pathdb.hpp"
#include "reach.hpp"

namespace delaybetter {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<std::uint64_t>::max() / b)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
    return r;
}

// Feedback edge set of the footprint with orientations ignored. Parallel
// directed edges (u,v),(v,u) count as a two-cycle, so at most one of them can
// stay in the forest. The complement of a spanning forest is minimum:
// |edges| = |E| - |V| + #components.
struct FeedbackEdgeSet {
    std::vector<EdgeIx> edges;   // E'
    std::vector<EdgeIx> forest;  // spanning forest (orientations ignored)

    int rho() const { return static_cast<int>(edges.size()); }
};

inline FeedbackEdgeSet compute_fes(const TemporalGraph& g) {
    std::vector<int> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    FeedbackEdgeSet fes;
    for (EdgeIx e = 0; e < g.edge_count(); ++e) {
        int a = find(g.edge(e).u), b = find(g.edge(e).v);
        if (a == b) {
            fes.edges.push_back(e);
        } else {
            parent[a] = b;
            fes.forest.push_back(e);
        }
    }
    return fes;
}

// Unique paths inside a spanning forest (orientations ignored while walking;
// each step keeps its traversal direction so callers can reject wrong-way
// directed edges).
class ForestPaths {
public:
    ForestPaths(const TemporalGraph& g, const std::vector<EdgeIx>& forest_edges) : g_(&g) {
        adj_.resize(g.vertex_count());
        for (EdgeIx e : forest_edges) {
            adj_[g.edge(e).u].emplace_back(g.edge(e).v, e);
            adj_[g.edge(e).v].emplace_back(g.edge(e).u, e);
        }
    }

    std::optional<Path> path(VertexIx s, VertexIx z) const {
        if (s == z) return Path{};
        std::vector<EdgeIx> via(g_->vertex_count(), -1);
        std::vector<VertexIx> from(g_->vertex_count(), -1);
        std::vector<VertexIx> queue{s};
        std::vector<char> seen(g_->vertex_count(), 0);
        seen[s] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            VertexIx v = queue[head];
            if (v == z) break;
            for (const auto& [w, e] : adj_[v]) {
                if (seen[w]) continue;
                seen[w] = 1;
                via[w] = e;
                from[w] = v;
                queue.push_back(w);
            }
        }
        if (!seen[z]) return std::nullopt;
        Path p;
        for (VertexIx at = z; at != s; at = from[at])
            p.push_back(PathStep{via[at], g_->edge(via[at]).u != from[at]});
        std::reverse(p.begin(), p.end());
        return p;
    }

private:
    const TemporalGraph* g_;
    std::vector<std::vector<std::pair<VertexIx, EdgeIx>>> adj_;
};

inline bool statically_reachable(const TemporalGraph& g, VertexIx s, VertexIx z) {
    if (s == z) return true;
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<VertexIx> queue{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        VertexIx v = queue[head];
        for (EdgeIx e = 0; e < g.edge_count(); ++e) {
            VertexIx next = -1;
            if (g.edge(e).u == v) next = g.edge(e).v;
            else if (!g.directed() && g.edge(e).v == v) next = g.edge(e).u;
            if (next >= 0 && !seen[next]) {
                if (next == z) return true;
                seen[next] = 1;
                queue.push_back(next);
            }
        }
    }
    return false;
}

namespace detail {

inline bool within_delta_cap(const Instance& inst, const Delaying& witness) {
    if (inst.kind() != ProblemKind::DeltaDB) return true;
    const Time delta = *inst.delta();
    for (EdgeIx e = 0; e < inst.graph().edge_count(); ++e)
        if (witness.labels[e] > inst.graph().edge(e).time + delta) return false;
    return true;
}

inline void require_db_like(const Instance& inst, const char* who) {
    if (inst.kind() == ProblemKind::PathDB)
        throw EngineError(Fault::WrongProblemKind, std::string(who) + " does not take path-db");
}

// Routes every demand along its unique forest path and decides the result via
// the prescribed-route fixed point. Shared by the tree engine and the rho = 0
// case of the FES engine. The fixed point witness is pointwise minimal, so if
// it breaks the delta cap no delta-delaying exists for these unique routes.
inline SolveResult solve_unique_routes(const Instance& inst, const ForestPaths& forest,
                                       const char* algorithm) {
    const TemporalGraph& g = inst.graph();
    SolveResult res;
    res.algorithm = algorithm;
    res.stats.branches = 1;

    std::vector<Path> paths;
    paths.reserve(inst.demands().size());
    for (const Demand& d : inst.demands()) {
        auto p = forest.path(d.source, d.target);
        if (!p) {
            res.answer = Answer::No;
            res.reason = NoReason::StaticallyUnreachable;
            return res;
        }
        if (g.directed())
            for (const PathStep& s : *p)
                if (s.reversed) {
                    res.answer = Answer::No;
                    res.reason = NoReason::OrientationBlocked;
                    return res;
                }
        paths.push_back(std::move(*p));
    }

    Instance routed = Instance::make(g, ProblemKind::PathDB, inst.demands(), std::move(paths));
    SolveResult inner = solve_path_db(routed);
    inner.algorithm = algorithm;
    inner.stats.branches = 1;
    if (inner.yes() && !within_delta_cap(inst, *inner.witness)) {
        SolveResult no;
        no.answer = Answer::No;
        no.reason = NoReason::DeadlineUnsatisfiable;
        no.algorithm = algorithm;
        no.stats = inner.stats;
        return no;
    }
    return inner;
}

}  // namespace detail

// Tree-footprint solver: each demand has at most one footprint route, so the
// problem reduces to prescribed routes.
inline SolveResult solve_db_tree(const Instance& inst) {
    detail::require_db_like(inst, "tree engine");
    FeedbackEdgeSet fes = compute_fes(inst.graph());
    if (!fes.edges.empty())
        throw EngineError(Fault::NotATree, "footprint has a cycle (orientations ignored)");
    ForestPaths forest(inst.graph(), fes.forest);
    return detail::solve_unique_routes(inst, forest, "tree");
}

// Single-source solver: opt(u) = min over incoming edges (w,u) of
// max(label(w,u), opt(w) + 1), computed by finalizing the smallest tentative
// value first. Witness delays each foremost-tree edge to the opt value of the
// vertex it finalizes.
inline SolveResult solve_db_single_source(const Instance& inst) {
    if (inst.kind() != ProblemKind::DB)
        throw EngineError(Fault::WrongProblemKind, "single-source engine only takes db");
    const TemporalGraph& g = inst.graph();
    SolveResult res;
    res.algorithm = "single-source";
    res.stats.branches = 1;

    if (inst.demands().empty()) {
        res.answer = Answer::Yes;
        res.witness = inst.initial_labels();
        return res;
    }
    const VertexIx source = inst.demands().front().source;
    for (const Demand& d : inst.demands())
        if (d.source != source)
            throw EngineError(Fault::MixedSources, "demands do not share one source");

    const int n = g.vertex_count();
    std::vector<Time> opt(n, kUnreachable);
    std::vector<char> done(n, 0);
    std::vector<EdgeIx> pred_edge(n, -1);
    std::vector<VertexIx> pred_vertex(n, -1);
    opt[source] = 0;
    for (int round = 0; round < n; ++round) {
        VertexIx best = -1;
        for (VertexIx v = 0; v < n; ++v)
            if (!done[v] && opt[v] != kUnreachable && (best < 0 || opt[v] < opt[best])) best = v;
        if (best < 0) break;
        done[best] = 1;
        ++res.stats.states;
        for (EdgeIx e = 0; e < g.edge_count(); ++e) {
            VertexIx to = -1;
            if (g.edge(e).u == best) to = g.edge(e).v;
            else if (!g.directed() && g.edge(e).v == best) to = g.edge(e).u;
            if (to < 0 || done[to]) continue;
            const Time cand = std::max(g.edge(e).time, opt[best] + 1);
            if (cand < opt[to]) {
                opt[to] = cand;
                pred_edge[to] = e;
                pred_vertex[to] = best;
            }
        }
    }

    for (const Demand& d : inst.demands()) {
        if (opt[d.target] == kUnreachable) {
            res.answer = Answer::No;
            res.reason = NoReason::StaticallyUnreachable;
            return res;
        }
        if (opt[d.target] > d.deadline) {
            res.answer = Answer::No;
            res.reason = NoReason::DeadlineUnsatisfiable;
            return res;
        }
    }

    Delaying witness = inst.initial_labels();
    for (VertexIx v = 0; v < n; ++v)
        if (pred_edge[v] >= 0) witness.labels[pred_edge[v]] = opt[v];
    res.answer = Answer::Yes;
    for (const Demand& d : inst.demands()) {
        Route route;
        for (VertexIx at = d.target; at != source; at = pred_vertex[at])
            route.push_back(RouteStep{pred_edge[at], g.edge(pred_edge[at]).v != at, opt[at]});
        std::reverse(route.begin(), route.end());
        res.routes.push_back(std::move(route));
    }
    res.witness = std::move(witness);
    return res;
}

struct BruteOptions {
    std::optional<Time> label_cap;           // override for the search ceiling
    std::uint64_t state_budget = 100'000'000;
};

namespace detail {

// Depth-first label enumeration with per-demand admissible pruning. Edges are
// assigned in index order, values ascending, so the first witness found is the
// lexicographically smallest feasible label vector (and hence pareto-optimal).
//
// The prune treats unassigned edges as flexible within [initial, cap]: a
// relaxation from arrival a crosses an assigned edge at its value (if later
// than a) and a flexible edge at max(initial, a + 1) when that fits the cap.
// This is a lower bound on any completed arrival, exact once all edges are
// assigned, so leaves need no separate verification.
class BruteSearch {
public:
    BruteSearch(const Instance& inst, const BruteOptions& opts)
        : inst_(inst), g_(inst.graph()), opts_(opts) {
        const Time ceiling = opts.label_cap ? *opts.label_cap : inst.t_max();
        caps_.reserve(g_.edge_count());
        for (const Edge& e : g_.edges()) {
            Time cap = ceiling;
            if (inst.kind() == ProblemKind::DeltaDB) cap = std::min(cap, e.time + *inst.delta());
            caps_.push_back(std::max(e.time, cap));
        }
        cur_.assign(g_.edge_count(), 0);
        adj_.resize(g_.vertex_count());
        for (EdgeIx e = 0; e < g_.edge_count(); ++e) {
            adj_[g_.edge(e).u].emplace_back(g_.edge(e).v, e);
            if (!g_.directed()) adj_[g_.edge(e).v].emplace_back(g_.edge(e).u, e);
        }
        dist_.resize(g_.vertex_count());
        done_.resize(g_.vertex_count());
    }

    SolveResult run() {
        SolveResult res;
        res.algorithm = "brute";
        bool found = dfs(0);
        res.stats.states = states_;
        if (!found) {
            res.answer = Answer::No;
            res.reason = NoReason::DeadlineUnsatisfiable;
            for (const Demand& d : inst_.demands())
                if (!statically_reachable(g_, d.source, d.target)) {
                    res.reason = NoReason::StaticallyUnreachable;
                    break;
                }
            return res;
        }
        res.answer = Answer::Yes;
        Delaying witness;
        witness.labels = cur_;
        if (inst_.kind() == ProblemKind::PathDB) {
            for (std::size_t i = 0; i < inst_.demands().size(); ++i) {
                Route route;
                for (const PathStep& s : inst_.path(static_cast<int>(i)))
                    route.push_back(RouteStep{s.edge, s.reversed, witness.labels[s.edge]});
                res.routes.push_back(std::move(route));
            }
        } else {
            std::map<VertexIx, ArrivalTable> by_source;
            for (const Demand& d : inst_.demands()) {
                auto it = by_source.find(d.source);
                if (it == by_source.end())
                    it = by_source.emplace(d.source, earliest_arrivals(g_, witness, d.source)).first;
                res.routes.push_back(extract_route(g_, it->second, d.target));
            }
        }
        res.witness = std::move(witness);
        return res;
    }

private:
    bool dfs(int idx) {
        if (++states_ > opts_.state_budget)
            throw EngineError(Fault::BudgetExceeded,
                              "brute force state budget exhausted (" +
                                  std::to_string(opts_.state_budget) + ")");
        for (std::size_t i = 0; i < inst_.demands().size(); ++i)
            if (!demand_feasible(static_cast<int>(i), idx)) return false;
        if (idx == g_.edge_count()) return true;
        for (Time val = g_.edge(idx).time; val <= caps_[idx]; ++val) {
            cur_[idx] = val;
            if (dfs(idx + 1)) return true;
        }
        return false;
    }

    bool demand_feasible(int di, int assigned) {
        const Demand& d = inst_.demands()[di];
        if (inst_.kind() == ProblemKind::PathDB) {
            Time at = 0;
            for (const PathStep& s : inst_.path(di)) {
                if (s.edge < assigned) {
                    if (cur_[s.edge] <= at) return false;
                    at = cur_[s.edge];
                } else {
                    at = std::max(g_.edge(s.edge).time, at + 1);
                    if (at > caps_[s.edge]) return false;
                }
            }
            return at <= d.deadline;
        }
        if (d.source == d.target) return true;
        std::fill(dist_.begin(), dist_.end(), kUnreachable);
        std::fill(done_.begin(), done_.end(), 0);
        dist_[d.source] = 0;
        while (true) {
            VertexIx best = -1;
            for (VertexIx v = 0; v < g_.vertex_count(); ++v)
                if (!done_[v] && dist_[v] != kUnreachable && (best < 0 || dist_[v] < dist_[best]))
                    best = v;
            if (best < 0 || dist_[best] > d.deadline) return false;
            if (best == d.target) return true;
            done_[best] = 1;
            for (const auto& [to, e] : adj_[best]) {
                if (done_[to]) continue;
                Time at;
                if (e < assigned) {
                    if (cur_[e] <= dist_[best]) continue;
                    at = cur_[e];
                } else {
                    at = std::max(g_.edge(e).time, dist_[best] + 1);
                    if (at > caps_[e]) continue;
                }
                if (at < dist_[to]) dist_[to] = at;
            }
        }
    }

    const Instance& inst_;
    const TemporalGraph& g_;
    BruteOptions opts_;
    std::vector<Time> caps_;
    std::vector<Time> cur_;
    std::vector<std::vector<std::pair<VertexIx, EdgeIx>>> adj_;
    std::vector<Time> dist_;
    std::vector<char> done_;
    std::uint64_t states_ = 0;
};

}  // namespace detail

// Exhaustive oracle over per-edge labels. Ceiling: no label beyond T_max helps
// (an edge delayed past every deadline can be left alone instead), and the
// delta cap applies per edge. The first witness is lexicographically minimal.
inline SolveResult solve_brute_force(const Instance& inst, const BruteOptions& opts = {}) {
    detail::BruteSearch search(inst, opts);
    return search.run();
}

struct FesOptions {
    std::uint64_t branch_budget = 10'000'000;
    unsigned jobs = 1;
};

namespace detail {

struct FesBranchPlan {
    // Per demand, the masks whose stitched route is a simple path respecting
    // orientation, with the route itself.
    std::vector<std::vector<std::pair<std::uint64_t, Path>>> options;
    std::uint64_t evaluated_masks = 0;
};

// Expands a selection mask into the implied footprint route: alternate unique
// forest segments with the chosen feedback edges in permutation order.
inline std::optional<Path> stitch_route(const TemporalGraph& g, const ForestPaths& forest,
                                        const std::vector<EdgeIx>& perm, std::uint64_t mask,
                                        int way, const Demand& d) {
    Path route;
    VertexIx at = d.source;
    std::uint64_t rest = mask;
    for (std::size_t pos = 0; pos < perm.size(); ++pos, rest /= way) {
        const int digit = static_cast<int>(rest % way);
        if (digit == 0) continue;
        const EdgeIx e = perm[pos];
        const bool reversed = (digit == 2);
        const VertexIx enter = reversed ? g.edge(e).v : g.edge(e).u;
        const VertexIx leave = reversed ? g.edge(e).u : g.edge(e).v;
        auto seg = forest.path(at, enter);
        if (!seg) return std::nullopt;
        for (const PathStep& s : *seg) route.push_back(s);
        route.push_back(PathStep{e, reversed});
        at = leave;
    }
    auto seg = forest.path(at, d.target);
    if (!seg) return std::nullopt;
    for (const PathStep& s : *seg) route.push_back(s);

    if (g.directed())
        for (const PathStep& s : route)
            if (s.reversed) return std::nullopt;

    // Simple-path check; walks that revisit a vertex are covered by the branch
    // of their shortcut.
    std::vector<char> seen(g.vertex_count(), 0);
    VertexIx v = d.source;
    seen[v] = 1;
    for (const PathStep& s : route) {
        if (step_from(g, s) != v) return std::nullopt;
        v = step_to(g, s);
        if (seen[v]) return std::nullopt;
        seen[v] = 1;
    }
    return route;
}

}  // namespace detail

// FPT engine parameterized by feedback edge set size and demand count.
// For every ordering of E' and every per-demand selection of feedback edges
// (with a traversal direction when undirected), the remaining journey is
// forced through unique forest segments; each branch is a prescribed-route
// instance. First feasible branch wins, lowest branch index first.
inline SolveResult solve_db_fes(const Instance& inst, const FesOptions& opts = {}) {
    detail::require_db_like(inst, "fes engine");
    const TemporalGraph& g = inst.graph();
    FeedbackEdgeSet fes = compute_fes(g);
    ForestPaths forest(g, fes.forest);
    if (fes.edges.empty()) return detail::solve_unique_routes(inst, forest, "fes");

    const std::uint64_t rho = fes.edges.size();
    const std::uint64_t dcount = inst.demands().size();
    const int way = g.directed() ? 2 : 3;
    std::uint64_t factorial = 1;
    for (std::uint64_t i = 2; i <= rho; ++i) factorial = saturating_mul(factorial, i);
    const std::uint64_t bound =
        saturating_mul(factorial, saturating_pow(static_cast<std::uint64_t>(way), rho * dcount));
    if (bound > opts.branch_budget)
        throw EngineError(Fault::BudgetExceeded,
                          "fes branch bound " + std::to_string(bound) + " exceeds budget " +
                              std::to_string(opts.branch_budget));

    std::vector<EdgeIx> base(fes.edges);
    std::sort(base.begin(), base.end());
    const std::uint64_t masks_per_demand = saturating_pow(static_cast<std::uint64_t>(way), rho);

    SolveResult best;
    best.answer = Answer::No;
    std::uint64_t best_perm = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total_branches = 0;
    std::uint64_t total_states = 0;
    std::mutex best_mutex;

    // Collect permutations up front (rho! is budget-bounded).
    std::vector<std::vector<EdgeIx>> perms;
    {
        std::vector<EdgeIx> p = base;
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }

    auto run_perm = [&](std::uint64_t perm_ix) {
        const std::vector<EdgeIx>& perm = perms[perm_ix];
        detail::FesBranchPlan plan;
        plan.options.resize(dcount);
        for (std::size_t di = 0; di < dcount; ++di) {
            for (std::uint64_t mask = 0; mask < masks_per_demand; ++mask) {
                ++plan.evaluated_masks;
                auto route =
                    detail::stitch_route(g, forest, perm, mask, way, inst.demands()[di]);
                if (route) plan.options[di].emplace_back(mask, std::move(*route));
            }
            if (plan.options[di].empty()) break;
        }

        std::uint64_t branches = 0;
        std::optional<SolveResult> found;
        bool complete = true;
        for (std::size_t di = 0; di < dcount; ++di)
            if (plan.options[di].empty()) complete = false;
        if (complete) {
            std::vector<std::size_t> pick(dcount, 0);
            while (true) {
                ++branches;
                std::vector<Path> paths;
                paths.reserve(dcount);
                for (std::size_t di = 0; di < dcount; ++di)
                    paths.push_back(plan.options[di][pick[di]].second);
                Instance routed =
                    Instance::make(g, ProblemKind::PathDB, inst.demands(), std::move(paths));
                SolveResult inner = solve_path_db(routed);
                if (inner.yes() && detail::within_delta_cap(inst, *inner.witness)) {
                    found = std::move(inner);
                    break;
                }
                if (dcount == 0) break;
                std::size_t pos = dcount;
                bool advanced = false;
                while (pos > 0) {
                    --pos;
                    if (++pick[pos] < plan.options[pos].size()) {
                        advanced = true;
                        break;
                    }
                    pick[pos] = 0;
                }
                if (!advanced) break;
            }
        }

        {
            std::lock_guard<std::mutex> lock(best_mutex);
            total_branches += branches;
            total_states += plan.evaluated_masks;
            if (found && perm_ix < best_perm) {
                best_perm = perm_ix;
                best = std::move(*found);
            }
        }
    };

    const unsigned jobs = std::max(1u, opts.jobs);
    if (jobs <= 1 || perms.size() <= 1) {
        for (std::uint64_t pi = 0; pi < perms.size(); ++pi) {
            run_perm(pi);
            if (best_perm != std::numeric_limits<std::uint64_t>::max()) break;
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::atomic<std::uint64_t> cutoff{std::numeric_limits<std::uint64_t>::max()};
        auto worker = [&]() {
            while (true) {
                const std::uint64_t pi = next.fetch_add(1);
                if (pi >= perms.size() || pi > cutoff.load()) return;
                run_perm(pi);
                std::lock_guard<std::mutex> lock(best_mutex);
                if (best_perm < cutoff.load()) cutoff.store(best_perm);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SolveResult res = best_perm == std::numeric_limits<std::uint64_t>::max()
                          ? SolveResult{}
                          : std::move(best);
    if (best_perm == std::numeric_limits<std::uint64_t>::max()) {
        res.answer = Answer::No;
        res.reason = NoReason::DeadlineUnsatisfiable;
        for (const Demand& d : inst.demands())
            if (!statically_reachable(g, d.source, d.target)) {
                res.reason = NoReason::StaticallyUnreachable;
                break;
            }
    }
    res.algorithm = "fes";
    res.stats.branches = total_branches;
    res.stats.states = total_states;
    return res;
}

struct SolveOptions {
    std::uint64_t branch_budget = 10'000'000;
    std::uint64_t state_budget = 100'000'000;
    std::optional<std::string> algorithm;  // force: pathdb, tree, single-source, fes, brute
    unsigned jobs = 1;
};

namespace detail {

inline SolveResult run_engine(const Instance& inst, const std::string& algo,
                              const SolveOptions& opts) {
    if (algo == "pathdb") return solve_path_db(inst);
    if (algo == "tree") return solve_db_tree(inst);
    if (algo == "single-source") return solve_db_single_source(inst);
    if (algo == "fes") return solve_db_fes(inst, FesOptions{opts.branch_budget, opts.jobs});
    if (algo == "brute")
        return solve_brute_force(inst, BruteOptions{std::nullopt, opts.state_budget});
    throw EngineError(Fault::InvalidInput, "unknown algorithm '" + algo + "'");
}

inline std::string pick_engine(const Instance& inst, const SolveOptions& opts) {
    if (inst.kind() == ProblemKind::PathDB) return "pathdb";
    FeedbackEdgeSet fes = compute_fes(inst.graph());
    if (fes.edges.empty()) return "tree";
    if (inst.kind() == ProblemKind::DB && !inst.demands().empty()) {
        bool same = true;
        for (const Demand& d : inst.demands())
            if (d.source != inst.demands().front().source) same = false;
        if (same) return "single-source";
    }
    const std::uint64_t rho = fes.edges.size();
    std::uint64_t factorial = 1;
    for (std::uint64_t i = 2; i <= rho; ++i) factorial = saturating_mul(factorial, i);
    const int way = inst.graph().directed() ? 2 : 3;
    const std::uint64_t bound = saturating_mul(
        factorial,
        saturating_pow(static_cast<std::uint64_t>(way), rho * inst.demands().size()));
    return bound <= opts.branch_budget ? "fes" : "brute";
}

}  // namespace detail

// Auto dispatcher: compresses the lifetime, routes to an engine by instance
// shape, and lifts the witness back to original time coordinates.
inline SolveResult solve(const Instance& inst, const SolveOptions& opts = {}) {
    CompressResult comp = compress_lifetime(inst);
    const std::string algo =
        opts.algorithm ? *opts.algorithm : detail::pick_engine(comp.instance, opts);
    SolveResult res;
    try {
        res = detail::run_engine(comp.instance, algo, opts);
    } catch (const EngineError& e) {
        if (!opts.algorithm && e.fault() == Fault::BudgetExceeded)
            throw EngineError(Fault::Undecided, "every applicable engine exceeded its budget");
        throw;
    }
    if (res.witness) res.witness = lift_witness(inst, comp.remap, *res.witness);
    for (Route& route : res.routes)
        for (RouteStep& s : route) s.time = comp.remap.to_original(s.time);
    return res;
}

}  // namespace delaybetter
