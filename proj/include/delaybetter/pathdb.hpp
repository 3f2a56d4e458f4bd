#pragma once

#include <algorithm>
#include <queue>
#include <set>
#include <vector>

#include "model.hpp"
#include "reach.hpp"

namespace delaybetter {

// Precedence over footprint edges: (e, f) is an arc when e immediately
// precedes f on some demanded route. One node per edge, including edges on no
// demanded route. An undirected edge traversed by several demands (in either
// direction) is still a single node; each traversal contributes its own arcs.
struct PrecedenceGraph {
    std::vector<std::vector<EdgeIx>> preds;
    std::vector<std::vector<EdgeIx>> succs;
    std::vector<Time> lower;      // initial label per node
    std::vector<Time> deadline;   // min demand deadline over routes ending here
    std::vector<char> demanded;   // node lies on some demanded route

    int node_count() const { return static_cast<int>(lower.size()); }
};

inline PrecedenceGraph build_precedence(const Instance& inst) {
    if (inst.kind() != ProblemKind::PathDB)
        throw EngineError(Fault::WrongProblemKind, "precedence graph needs a path-db instance");
    const TemporalGraph& g = inst.graph();
    PrecedenceGraph p;
    const int m = g.edge_count();
    p.preds.resize(m);
    p.succs.resize(m);
    p.lower.reserve(m);
    for (const Edge& e : g.edges()) p.lower.push_back(e.time);
    p.deadline.assign(m, kUnreachable);
    p.demanded.assign(m, 0);

    std::set<std::pair<EdgeIx, EdgeIx>> arcs;
    for (std::size_t i = 0; i < inst.demands().size(); ++i) {
        const Path& path = inst.path(static_cast<int>(i));
        for (std::size_t k = 0; k < path.size(); ++k) {
            p.demanded[path[k].edge] = 1;
            if (k + 1 < path.size()) arcs.emplace(path[k].edge, path[k + 1].edge);
        }
        if (!path.empty()) {
            EdgeIx last = path.back().edge;
            p.deadline[last] = std::min(p.deadline[last], inst.demands()[i].deadline);
        }
    }
    for (const auto& [a, b] : arcs) {
        p.succs[a].push_back(b);
        p.preds[b].push_back(a);
    }
    return p;
}

// Least fixed point t'(e) = max(initial(e), 1 + max over predecessors t'(f)),
// computed in topological order (Kahn, smallest available node first so the
// witness is reproducible byte for byte). A directed cycle in the precedence
// relation means labels along it would have to increase forever: NO.
// The fixed point is pointwise minimal over all feasible delayings restricted
// to demanded edges, hence also integral and slack-maximal.
inline SolveResult solve_path_db(const Instance& inst) {
    if (inst.kind() != ProblemKind::PathDB)
        throw EngineError(Fault::WrongProblemKind, "solve_path_db needs a path-db instance");
    PrecedenceGraph p = build_precedence(inst);
    const int m = p.node_count();

    SolveResult res;
    res.algorithm = "pathdb";
    res.stats.states = static_cast<std::uint64_t>(m);

    std::vector<int> indegree(m);
    std::priority_queue<EdgeIx, std::vector<EdgeIx>, std::greater<>> ready;
    for (EdgeIx e = 0; e < m; ++e) {
        indegree[e] = static_cast<int>(p.preds[e].size());
        if (indegree[e] == 0) ready.push(e);
    }

    std::vector<Time> fixed(p.lower);
    int processed = 0;
    while (!ready.empty()) {
        EdgeIx e = ready.top();
        ready.pop();
        ++processed;
        for (EdgeIx f : p.preds[e]) fixed[e] = std::max(fixed[e], fixed[f] + 1);
        for (EdgeIx f : p.succs[e])
            if (--indegree[f] == 0) ready.push(f);
    }
    if (processed < m) {
        res.answer = Answer::No;
        res.reason = NoReason::PrecedenceCycle;
        return res;
    }

    for (std::size_t i = 0; i < inst.demands().size(); ++i) {
        EdgeIx last = inst.path_final_edge(static_cast<int>(i));
        if (last >= 0 && fixed[last] > inst.demands()[i].deadline) {
            res.answer = Answer::No;
            res.reason = NoReason::DeadlineUnsatisfiable;
            return res;
        }
    }

    Delaying witness;
    witness.labels.resize(m);
    for (EdgeIx e = 0; e < m; ++e)
        witness.labels[e] = p.demanded[e] ? fixed[e] : inst.graph().edge(e).time;

    res.answer = Answer::Yes;
    res.routes.reserve(inst.demands().size());
    for (std::size_t i = 0; i < inst.demands().size(); ++i) {
        Route route;
        for (const PathStep& s : inst.path(static_cast<int>(i)))
            route.push_back(RouteStep{s.edge, s.reversed, fixed[s.edge]});
        res.routes.push_back(std::move(route));
    }
    res.witness = std::move(witness);
    return res;
}

}  // namespace delaybetter
