#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace delaybetter {

struct EdgeSpec {
    std::string u;
    std::string v;
    Time time = 1;
};

// One stored footprint edge. For undirected graphs endpoints are canonical
// (name-lexicographic), so the label map has exactly one key per edge.
struct Edge {
    VertexIx u = -1;
    VertexIx v = -1;
    Time time = 1;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Static footprint plus the initial temporal assignment. Immutable after
// construction; all invariants (simplicity, declared endpoints, times >= 1)
// hold for every reachable object.
class TemporalGraph {
public:
    TemporalGraph() = default;

    static TemporalGraph make(bool directed, std::vector<std::string> vertices,
                              const std::vector<EdgeSpec>& edges) {
        TemporalGraph g;
        g.directed_ = directed;
        g.names_ = std::move(vertices);
        for (int i = 0; i < static_cast<int>(g.names_.size()); ++i) {
            if (g.names_[i].empty())
                throw ValidationError("vertices[" + std::to_string(i) + "]: empty vertex name");
            if (!g.index_.emplace(g.names_[i], i).second)
                throw ValidationError("vertices[" + std::to_string(i) + "]: duplicate vertex '" +
                                      g.names_[i] + "'");
        }
        g.edges_.reserve(edges.size());
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const auto& e = edges[k];
            const std::string where = "edges[" + std::to_string(k) + "]";
            auto iu = g.index_.find(e.u);
            auto iv = g.index_.find(e.v);
            if (iu == g.index_.end())
                throw ValidationError(where + ": unknown vertex '" + e.u + "'");
            if (iv == g.index_.end())
                throw ValidationError(where + ": unknown vertex '" + e.v + "'");
            if (e.u == e.v) throw ValidationError(where + ": self-loop at '" + e.u + "'");
            if (e.time < 1)
                throw ValidationError(where + ": time " + std::to_string(e.time) + " < 1");
            VertexIx a = iu->second, b = iv->second;
            if (!directed && g.names_[a] > g.names_[b]) std::swap(a, b);
            if (!g.edge_lookup_.emplace(std::make_pair(a, b), static_cast<EdgeIx>(g.edges_.size()))
                     .second)
                throw ValidationError(where + ": repeated edge {" + e.u + "," + e.v + "}");
            g.edges_.push_back(Edge{a, b, e.time});
        }
        return g;
    }

    bool directed() const { return directed_; }
    int vertex_count() const { return static_cast<int>(names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::string>& vertices() const { return names_; }
    const std::string& vertex_name(VertexIx v) const { return names_[v]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeIx e) const { return edges_[e]; }

    std::optional<VertexIx> find_vertex(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    VertexIx vertex(const std::string& name) const {
        auto v = find_vertex(name);
        if (!v) throw EngineError(Fault::UnknownVertex, "no vertex named '" + name + "'");
        return *v;
    }

    // Directed: exact (u,v). Undirected: either endpoint order.
    std::optional<EdgeIx> find_edge(VertexIx u, VertexIx v) const {
        if (!directed_ && names_[u] > names_[v]) std::swap(u, v);
        auto it = edge_lookup_.find(std::make_pair(u, v));
        if (it == edge_lookup_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<EdgeIx> find_edge(const std::string& u, const std::string& v) const {
        auto iu = find_vertex(u);
        auto iv = find_vertex(v);
        if (!iu || !iv) return std::nullopt;
        return find_edge(*iu, *iv);
    }

    // Maximum edge label (0 for an edgeless graph).
    Time lifetime() const {
        Time t = 0;
        for (const auto& e : edges_) t = std::max(t, e.time);
        return t;
    }

    friend bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
        return a.directed_ == b.directed_ && a.names_ == b.names_ && a.edges_ == b.edges_;
    }

private:
    bool directed_ = false;
    std::vector<std::string> names_;
    std::map<std::string, VertexIx> index_;
    std::vector<Edge> edges_;
    std::map<std::pair<VertexIx, VertexIx>, EdgeIx> edge_lookup_;
};

struct Demand {
    VertexIx source = -1;
    VertexIx target = -1;
    Time deadline = 0;

    friend bool operator==(const Demand&, const Demand&) = default;
};

// One traversal step of a prescribed route: which edge, and whether it is
// walked against the stored endpoint order (undirected only).
struct PathStep {
    EdgeIx edge = -1;
    bool reversed = false;

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

using Path = std::vector<PathStep>;

inline VertexIx step_from(const TemporalGraph& g, const PathStep& s) {
    const Edge& e = g.edge(s.edge);
    return s.reversed ? e.v : e.u;
}

inline VertexIx step_to(const TemporalGraph& g, const PathStep& s) {
    const Edge& e = g.edge(s.edge);
    return s.reversed ? e.u : e.v;
}

enum class ProblemKind { DB, DeltaDB, PathDB };

inline const char* problem_kind_name(ProblemKind k) {
    switch (k) {
        case ProblemKind::DB: return "db";
        case ProblemKind::DeltaDB: return "delta-db";
        case ProblemKind::PathDB: return "path-db";
    }
    return "?";
}

// Full per-edge reassignment; the witness object for yes answers.
struct Delaying {
    std::vector<Time> labels;

    friend bool operator==(const Delaying&, const Delaying&) = default;
};

// A decision instance: graph, demands (with prescribed routes for Path-DB),
// and the per-edge delay cap for the delta variant.
class Instance {
public:
    Instance() = default;

    static Instance make(TemporalGraph graph, ProblemKind kind, std::vector<Demand> demands,
                         std::vector<Path> paths = {}, std::optional<Time> delta = std::nullopt) {
        Instance inst;
        inst.graph_ = std::move(graph);
        inst.kind_ = kind;
        inst.demands_ = std::move(demands);
        inst.paths_ = std::move(paths);
        inst.delta_ = delta;
        inst.validate();
        return inst;
    }

    const TemporalGraph& graph() const { return graph_; }
    ProblemKind kind() const { return kind_; }
    const std::vector<Demand>& demands() const { return demands_; }
    const std::vector<Path>& paths() const { return paths_; }
    const Path& path(int d) const { return paths_[d]; }
    std::optional<Time> delta() const { return delta_; }

    // Last edge of a prescribed route; -1 for the empty route of a
    // source==target demand.
    EdgeIx path_final_edge(int d) const {
        const Path& p = paths_[d];
        return p.empty() ? -1 : p.back().edge;
    }

    Time t_init() const { return graph_.lifetime(); }

    // Largest deadline demanded by any single demand.
    Time t_max() const {
        Time t = 0;
        for (const auto& d : demands_) t = std::max(t, d.deadline);
        return t;
    }

    Delaying initial_labels() const {
        Delaying d;
        d.labels.reserve(graph_.edge_count());
        for (const auto& e : graph_.edges()) d.labels.push_back(e.time);
        return d;
    }

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.graph_ == b.graph_ && a.kind_ == b.kind_ && a.demands_ == b.demands_ &&
               a.paths_ == b.paths_ && a.delta_ == b.delta_;
    }

private:
    void validate() const {
        if ((kind_ == ProblemKind::DeltaDB) != delta_.has_value())
            throw ValidationError(kind_ == ProblemKind::DeltaDB
                                      ? "delta-db instance is missing 'delta'"
                                      : "'delta' present but the instance is not delta-db");
        if (delta_ && *delta_ < 0) throw ValidationError("'delta' must be >= 0");
        if (kind_ == ProblemKind::PathDB) {
            if (paths_.size() != demands_.size())
                throw ValidationError("path-db instance needs one path per demand");
        } else if (!paths_.empty()) {
            throw ValidationError("prescribed paths are only allowed in path-db instances");
        }
        const int n = graph_.vertex_count();
        for (std::size_t i = 0; i < demands_.size(); ++i) {
            const auto& d = demands_[i];
            const std::string where = "demands[" + std::to_string(i) + "]";
            if (d.source < 0 || d.source >= n || d.target < 0 || d.target >= n)
                throw ValidationError(where + ": endpoint is not a declared vertex");
            if (d.deadline < 0) throw ValidationError(where + ": deadline < 0");
            if (kind_ == ProblemKind::PathDB) validate_path(i, where);
        }
    }

    void validate_path(std::size_t i, const std::string& where) const {
        const Demand& d = demands_[i];
        const Path& p = paths_[i];
        if (p.empty()) {
            if (d.source != d.target)
                throw ValidationError(where + ": empty path but source != target");
            return;
        }
        if (d.source == d.target)
            throw ValidationError(where + ": nonempty path with source == target");
        VertexIx at = d.source;
        std::vector<char> seen(graph_.vertex_count(), 0);
        seen[at] = 1;
        for (std::size_t k = 0; k < p.size(); ++k) {
            const PathStep& s = p[k];
            if (s.edge < 0 || s.edge >= graph_.edge_count())
                throw ValidationError(where + ".path[" + std::to_string(k) + "]: no such edge");
            if (graph_.directed() && s.reversed)
                throw ValidationError(where + ".path[" + std::to_string(k) +
                                      "]: directed edge traversed against orientation");
            if (step_from(graph_, s) != at)
                throw ValidationError(where + ".path[" + std::to_string(k) +
                                      "]: step does not continue the path");
            at = step_to(graph_, s);
            if (seen[at])
                throw ValidationError(where + ".path[" + std::to_string(k) +
                                      "]: repeated vertex '" + graph_.vertex_name(at) + "'");
            seen[at] = 1;
        }
        if (at != d.target) throw ValidationError(where + ": path does not end at the target");
    }

    TemporalGraph graph_;
    ProblemKind kind_ = ProblemKind::DB;
    std::vector<Demand> demands_;
    std::vector<Path> paths_;
    std::optional<Time> delta_;
};

// Resolves a step given by vertex names against the graph, inferring the
// traversal direction for undirected edges.
inline PathStep resolve_step(const TemporalGraph& g, const std::string& from,
                             const std::string& to, const std::string& where) {
    auto e = g.find_edge(from, to);
    if (!e) throw ValidationError(where + ": no edge {" + from + "," + to + "}");
    PathStep s;
    s.edge = *e;
    s.reversed = !g.directed() && g.vertex_name(g.edge(*e).u) != from;
    return s;
}

enum class Answer { Yes, No };

enum class NoReason {
    DeadlineUnsatisfiable,
    PrecedenceCycle,
    StaticallyUnreachable,
    OrientationBlocked,
};

inline const char* no_reason_name(NoReason r) {
    switch (r) {
        case NoReason::DeadlineUnsatisfiable: return "DEADLINE_UNSATISFIABLE";
        case NoReason::PrecedenceCycle: return "PRECEDENCE_CYCLE";
        case NoReason::StaticallyUnreachable: return "STATICALLY_UNREACHABLE";
        case NoReason::OrientationBlocked: return "ORIENTATION_BLOCKED";
    }
    return "?";
}

struct RouteStep {
    EdgeIx edge = -1;
    bool reversed = false;
    Time time = 0;

    friend bool operator==(const RouteStep&, const RouteStep&) = default;
};

using Route = std::vector<RouteStep>;

struct SolveStats {
    std::uint64_t branches = 0;
    std::uint64_t states = 0;
};

struct SolveResult {
    Answer answer = Answer::No;
    std::optional<Delaying> witness;
    std::vector<Route> routes;  // one per demand when answer == Yes
    std::optional<NoReason> reason;
    std::string algorithm;
    SolveStats stats;

    bool yes() const { return answer == Answer::Yes; }
};

}  // namespace delaybetter
