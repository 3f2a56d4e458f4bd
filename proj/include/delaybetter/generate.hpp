#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "model.hpp"
#include "solvers.hpp"

namespace delaybetter {

// Deterministic PRNG with a platform-independent bounded draw (standard
// distributions are implementation-defined and would break byte-identical
// generation across toolchains).
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform-ish draw in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    Time time_in(Time lo, Time hi) {  // inclusive
        return lo + static_cast<Time>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next() & 1) != 0; }

private:
    std::uint64_t state_;
};

enum class GenerateKind { Random, Tree, LowFes, Lifetime2 };

struct GenerateParams {
    GenerateKind kind = GenerateKind::Random;
    int n = 6;
    int m = 6;                  // ignored for tree (n - 1 edges)
    int demand_count = 2;
    Time tmax = 6;              // deadline ceiling and initial label ceiling
    bool directed = false;
    std::optional<Time> delta;  // delta-db when present
    bool path_demands = false;  // path-db when true
    int rho = 1;                // low-fes: extra non-forest edges
    std::uint64_t seed = 1;
};

namespace detail {

inline std::vector<std::string> numbered_vertices(int n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    return names;
}

// Random simple path for a path demand, found by a bounded random walk.
inline std::optional<Path> random_simple_path(const TemporalGraph& g, RandomSource& rng,
                                              VertexIx source, VertexIx target) {
    if (source == target) return Path{};
    for (int attempt = 0; attempt < 64; ++attempt) {
        Path path;
        std::vector<char> seen(g.vertex_count(), 0);
        VertexIx at = source;
        seen[at] = 1;
        bool ok = false;
        for (int hop = 0; hop < g.vertex_count(); ++hop) {
            std::vector<PathStep> moves;
            for (EdgeIx e = 0; e < g.edge_count(); ++e) {
                if (g.edge(e).u == at && !seen[g.edge(e).v])
                    moves.push_back(PathStep{e, false});
                if (!g.directed() && g.edge(e).v == at && !seen[g.edge(e).u])
                    moves.push_back(PathStep{e, true});
            }
            if (moves.empty()) break;
            const PathStep pickd = moves[rng.below(moves.size())];
            path.push_back(pickd);
            at = step_to(g, pickd);
            seen[at] = 1;
            if (at == target) {
                ok = true;
                break;
            }
        }
        if (ok) return path;
    }
    return std::nullopt;
}

}  // namespace detail

// Seed-deterministic instance generator backing the generate subcommand and
// the randomized test suites.
inline Instance generate_instance(const GenerateParams& params) {
    if (params.n < 1) throw EngineError(Fault::InfeasibleParameters, "need n >= 1");
    if (params.demand_count < 0)
        throw EngineError(Fault::InfeasibleParameters, "need demands >= 0");
    if (params.tmax < 1) throw EngineError(Fault::InfeasibleParameters, "need tmax >= 1");
    if (params.delta && params.path_demands)
        throw EngineError(Fault::InfeasibleParameters, "delta and path demands cannot combine");
    RandomSource rng(params.seed);

    const int n = params.n;
    const std::int64_t max_edges =
        params.directed ? std::int64_t(n) * (n - 1) : std::int64_t(n) * (n - 1) / 2;

    int m = params.m;
    const Time label_cap = params.kind == GenerateKind::Lifetime2 ? 1 : params.tmax;
    const Time deadline_cap = params.kind == GenerateKind::Lifetime2 ? 2 : params.tmax;

    std::vector<EdgeSpec> edges;
    std::vector<std::string> names = detail::numbered_vertices(n);
    auto add_edge = [&](int a, int b) {
        edges.push_back(EdgeSpec{names[a], names[b], rng.time_in(1, label_cap)});
    };

    auto sample_extra_edges = [&](int want, TemporalGraph& probe) {
        int added = 0;
        int tries = 0;
        while (added < want) {
            if (++tries > 50 * (want + 1) + 1000)
                throw EngineError(Fault::InfeasibleParameters,
                                  "could not place the requested number of edges");
            int a = static_cast<int>(rng.below(n));
            int b = static_cast<int>(rng.below(n));
            if (a == b) continue;
            if (probe.find_edge(a, b)) continue;
            add_edge(a, b);
            probe = TemporalGraph::make(params.directed, names, edges);
            ++added;
        }
    };

    switch (params.kind) {
        case GenerateKind::Tree: {
            m = n - 1;
            for (int v = 1; v < n; ++v) {
                int parent = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
                if (params.directed && rng.coin())
                    add_edge(v, parent);
                else
                    add_edge(parent, v);
            }
            break;
        }
        case GenerateKind::LowFes: {
            if (params.rho < 0)
                throw EngineError(Fault::InfeasibleParameters, "need rho >= 0");
            for (int v = 1; v < n; ++v) {
                int parent = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
                if (params.directed && rng.coin())
                    add_edge(v, parent);
                else
                    add_edge(parent, v);
            }
            TemporalGraph probe = TemporalGraph::make(params.directed, names, edges);
            const int extra =
                static_cast<int>(std::min<std::int64_t>(params.rho, max_edges - (n - 1)));
            sample_extra_edges(extra, probe);
            m = static_cast<int>(edges.size());
            break;
        }
        case GenerateKind::Random:
        case GenerateKind::Lifetime2: {
            if (m < 0 || m > max_edges)
                throw EngineError(Fault::InfeasibleParameters,
                                  "edge count out of range for a simple graph");
            TemporalGraph probe = TemporalGraph::make(params.directed, names, {});
            sample_extra_edges(m, probe);
            break;
        }
    }

    TemporalGraph graph = TemporalGraph::make(params.directed, names, edges);

    std::vector<Demand> demands;
    std::vector<Path> paths;
    for (int i = 0; i < params.demand_count; ++i) {
        Demand d;
        d.deadline = rng.time_in(1, deadline_cap);
        if (params.path_demands) {
            // Prefer demands that actually carry a route.
            std::optional<Path> p;
            for (int attempt = 0; attempt < 32 && !p; ++attempt) {
                d.source = static_cast<int>(rng.below(n));
                d.target = static_cast<int>(rng.below(n));
                p = detail::random_simple_path(graph, rng, d.source, d.target);
            }
            if (!p) {
                d.source = d.target = static_cast<int>(rng.below(n));
                p = Path{};
            }
            demands.push_back(d);
            paths.push_back(std::move(*p));
        } else {
            d.source = static_cast<int>(rng.below(n));
            d.target = static_cast<int>(rng.below(n));
            demands.push_back(d);
        }
    }

    // Kind is implied by the demand payload in the interchange format, so a
    // path-db request without demands degrades to db.
    ProblemKind kind = params.path_demands && !demands.empty()
                           ? ProblemKind::PathDB
                           : (params.delta ? ProblemKind::DeltaDB : ProblemKind::DB);
    if (kind != ProblemKind::PathDB) paths.clear();
    return Instance::make(std::move(graph), kind, std::move(demands), std::move(paths),
                          params.delta);
}

}  // namespace delaybetter
