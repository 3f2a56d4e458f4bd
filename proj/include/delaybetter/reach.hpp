#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "model.hpp"

namespace delaybetter {

// Earliest strict-temporal arrival per vertex, with predecessor pointers for
// route extraction. arrival[source] == 0 by definition.
struct ArrivalTable {
    VertexIx source = -1;
    std::vector<Time> arrival;
    std::vector<EdgeIx> pred_edge;
    std::vector<VertexIx> pred_vertex;

    bool reaches(VertexIx v) const { return arrival[v] != kUnreachable; }
};

// Scans time-edges in nondecreasing label order. Edges sharing a label form
// one bucket; relaxations inside a bucket only use arrivals strictly earlier
// than the bucket's label, so equal-time edges cannot chain.
inline ArrivalTable earliest_arrivals(const TemporalGraph& g, const Delaying& labels,
                                      VertexIx source) {
    if (source < 0 || source >= g.vertex_count())
        throw EngineError(Fault::UnknownVertex, "arrival source out of range");
    if (static_cast<int>(labels.labels.size()) != g.edge_count())
        throw ValidationError("label assignment does not cover every edge");

    ArrivalTable t;
    t.source = source;
    t.arrival.assign(g.vertex_count(), kUnreachable);
    t.pred_edge.assign(g.vertex_count(), -1);
    t.pred_vertex.assign(g.vertex_count(), -1);
    t.arrival[source] = 0;

    std::vector<EdgeIx> order(g.edge_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](EdgeIx a, EdgeIx b) {
        return labels.labels[a] < labels.labels[b];
    });

    std::size_t i = 0;
    std::vector<std::tuple<VertexIx, EdgeIx, VertexIx>> bucket_updates;
    while (i < order.size()) {
        const Time now = labels.labels[order[i]];
        bucket_updates.clear();
        std::size_t j = i;
        for (; j < order.size() && labels.labels[order[j]] == now; ++j) {
            const Edge& e = g.edge(order[j]);
            auto relax = [&](VertexIx from, VertexIx to) {
                if (t.arrival[from] < now && now < t.arrival[to])
                    bucket_updates.emplace_back(to, order[j], from);
            };
            relax(e.u, e.v);
            if (!g.directed()) relax(e.v, e.u);
        }
        for (const auto& [to, via, from] : bucket_updates) {
            if (now < t.arrival[to]) {
                t.arrival[to] = now;
                t.pred_edge[to] = via;
                t.pred_vertex[to] = from;
            }
        }
        i = j;
    }
    return t;
}

// Walks predecessor pointers back from target. Empty when target == source.
inline Route extract_route(const TemporalGraph& g, const ArrivalTable& t, VertexIx target) {
    Route route;
    VertexIx at = target;
    while (at != t.source) {
        EdgeIx e = t.pred_edge[at];
        if (e < 0) throw Error("no route recorded to '" + g.vertex_name(at) + "'");
        RouteStep s;
        s.edge = e;
        s.reversed = g.edge(e).v != at;
        s.time = t.arrival[at];
        route.push_back(s);
        at = t.pred_vertex[at];
    }
    std::reverse(route.begin(), route.end());
    return route;
}

enum class VerifyViolation {
    None,
    MalformedWitness,
    LabelBelowInitial,
    DeltaCapExceeded,
    DemandUnmet,
};

inline const char* verify_violation_name(VerifyViolation v) {
    switch (v) {
        case VerifyViolation::None: return "NONE";
        case VerifyViolation::MalformedWitness: return "MALFORMED_WITNESS";
        case VerifyViolation::LabelBelowInitial: return "LABEL_BELOW_INITIAL";
        case VerifyViolation::DeltaCapExceeded: return "DELTA_CAP_EXCEEDED";
        case VerifyViolation::DemandUnmet: return "DEMAND_UNMET";
    }
    return "?";
}

struct DemandCheck {
    bool satisfied = false;
    Time arrival = kUnreachable;  // earliest arrival (or prescribed-route arrival)
};

struct VerifyReport {
    bool accepted = false;
    VerifyViolation violation = VerifyViolation::None;
    std::string detail;
    std::vector<DemandCheck> demands;

    explicit operator bool() const { return accepted; }
};

// Polynomial certificate check: (a) labels only grew, (b) within the delta cap
// for delta-db, (c) every demand met. A prescribed route is checked literally;
// free demands are checked via earliest arrivals from the demand source.
// Rejection reports the first violated condition.
inline VerifyReport verify(const Instance& inst, const Delaying& cand) {
    const TemporalGraph& g = inst.graph();
    VerifyReport rep;

    if (static_cast<int>(cand.labels.size()) != g.edge_count()) {
        rep.violation = VerifyViolation::MalformedWitness;
        rep.detail = "label assignment does not cover every edge";
        return rep;
    }
    for (EdgeIx e = 0; e < g.edge_count(); ++e) {
        if (cand.labels[e] < 1) {
            rep.violation = VerifyViolation::MalformedWitness;
            rep.detail = "edge " + std::to_string(e) + ": label < 1";
            return rep;
        }
    }
    for (EdgeIx e = 0; e < g.edge_count(); ++e) {
        if (cand.labels[e] < g.edge(e).time) {
            rep.violation = VerifyViolation::LabelBelowInitial;
            rep.detail = "edge {" + g.vertex_name(g.edge(e).u) + "," + g.vertex_name(g.edge(e).v) +
                         "} moved earlier than its initial time";
            return rep;
        }
    }
    if (inst.kind() == ProblemKind::DeltaDB) {
        const Time delta = *inst.delta();
        for (EdgeIx e = 0; e < g.edge_count(); ++e) {
            if (cand.labels[e] > g.edge(e).time + delta) {
                rep.violation = VerifyViolation::DeltaCapExceeded;
                rep.detail = "edge {" + g.vertex_name(g.edge(e).u) + "," +
                             g.vertex_name(g.edge(e).v) + "} delayed by more than delta";
                return rep;
            }
        }
    }

    rep.demands.resize(inst.demands().size());
    std::map<VertexIx, ArrivalTable> by_source;
    for (std::size_t i = 0; i < inst.demands().size(); ++i) {
        const Demand& d = inst.demands()[i];
        DemandCheck& check = rep.demands[i];
        if (inst.kind() == ProblemKind::PathDB) {
            Time prev = 0;
            bool ok = true;
            for (const PathStep& s : inst.path(static_cast<int>(i))) {
                const Time label = cand.labels[s.edge];
                if (prev >= label) ok = false;
                prev = label;
            }
            check.arrival = prev;
            check.satisfied = ok && prev <= d.deadline;
        } else {
            auto it = by_source.find(d.source);
            if (it == by_source.end())
                it = by_source.emplace(d.source, earliest_arrivals(g, cand, d.source)).first;
            check.arrival = it->second.arrival[d.target];
            check.satisfied = check.arrival != kUnreachable && check.arrival <= d.deadline;
        }
        if (!check.satisfied && rep.violation == VerifyViolation::None) {
            rep.violation = VerifyViolation::DemandUnmet;
            rep.detail = "demand " + std::to_string(i) + " (" + g.vertex_name(d.source) + " -> " +
                         g.vertex_name(d.target) + " by " + std::to_string(d.deadline) + ") unmet";
        }
    }
    if (rep.violation != VerifyViolation::None) return rep;
    rep.accepted = true;
    return rep;
}

// Piecewise-linear monotone remap between original and compressed time axes.
// Each piece maps [orig_start, orig_start+len] one-to-one onto
// [new_start, new_start+len]; queries past a piece clamp into the cut zone.
class TimeRemap {
public:
    struct Piece {
        Time orig_start = 0;
        Time new_start = 0;
        Time len = 0;
    };

    TimeRemap() { pieces_.push_back(Piece{0, 0, 0}); }
    explicit TimeRemap(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
        if (pieces_.empty()) pieces_.push_back(Piece{0, 0, 0});
    }

    const std::vector<Piece>& pieces() const { return pieces_; }

    Time to_compressed(Time x) const {
        const Piece& p = find_by_orig(x);
        return p.new_start + std::min(std::max<Time>(x - p.orig_start, 0), p.len);
    }

    Time to_original(Time c) const {
        const Piece& p = find_by_new(c);
        return p.orig_start + std::min(std::max<Time>(c - p.new_start, 0), p.len);
    }

    Delaying lift(const Delaying& compressed) const {
        Delaying out;
        out.labels.reserve(compressed.labels.size());
        for (Time t : compressed.labels) out.labels.push_back(to_original(t));
        return out;
    }

private:
    const Piece& find_by_orig(Time x) const {
        std::size_t lo = 0;
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            if (pieces_[i].orig_start <= x) lo = i;
        return pieces_[lo];
    }
    const Piece& find_by_new(Time c) const {
        std::size_t lo = 0;
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            if (pieces_[i].new_start <= c) lo = i;
        return pieces_[lo];
    }

    std::vector<Piece> pieces_;
};

struct CompressResult {
    Instance instance;
    TimeRemap remap;
};

namespace detail {

inline Instance rebuild_with_times(const Instance& inst, const TimeRemap& remap) {
    const TemporalGraph& g = inst.graph();
    std::vector<EdgeSpec> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges())
        edges.push_back(EdgeSpec{g.vertex_name(e.u), g.vertex_name(e.v),
                                 remap.to_compressed(e.time)});
    TemporalGraph ng = TemporalGraph::make(g.directed(), g.vertices(), edges);
    std::vector<Demand> demands = inst.demands();
    for (Demand& d : demands) d.deadline = remap.to_compressed(d.deadline);
    return Instance::make(std::move(ng), inst.kind(), std::move(demands), inst.paths(),
                          inst.delta());
}

}  // namespace detail

// Equisatisfiable instance with small times, plus the remap that lifts
// compressed witnesses back to original time coordinates.
//
// DB / Path-DB: explicit times (labels and deadlines) are anchors; every gap
// between consecutive anchors (including the gap above 0) shrinks to at most
// |E|, because a solution places at most |E| distinct labels inside any gap.
//
// delta-db: only times inside some window [t, t+delta] around an explicit t
// can ever be used; the windows are merged into blocks and everything between
// blocks is cut, leaving consecutive block images.
inline CompressResult compress_lifetime(const Instance& inst) {
    // An edge labeled past every deadline can never appear on a satisfied
    // route; collapsing all such labels to T_max + 1 keeps the answer and
    // bounds the compressed initial lifetime by the compressed T_max + 1.
    // Witness lifting then floors each label at the edge's true initial time
    // (see lift_witness).
    Instance clamped = inst;
    if (!inst.demands().empty()) {
        const Time ceiling = inst.t_max() + 1;
        bool needed = false;
        for (const Edge& e : inst.graph().edges())
            if (e.time > ceiling) needed = true;
        if (needed) {
            std::vector<EdgeSpec> edges;
            for (const Edge& e : inst.graph().edges())
                edges.push_back(EdgeSpec{inst.graph().vertex_name(e.u),
                                         inst.graph().vertex_name(e.v),
                                         std::min(e.time, ceiling)});
            TemporalGraph ng =
                TemporalGraph::make(inst.graph().directed(), inst.graph().vertices(), edges);
            clamped = Instance::make(std::move(ng), inst.kind(), inst.demands(), inst.paths(),
                                     inst.delta());
        }
    }

    const TemporalGraph& g = clamped.graph();
    std::vector<Time> explicit_times;
    for (const Edge& e : g.edges()) explicit_times.push_back(e.time);
    for (const Demand& d : clamped.demands()) explicit_times.push_back(d.deadline);
    std::sort(explicit_times.begin(), explicit_times.end());
    explicit_times.erase(std::unique(explicit_times.begin(), explicit_times.end()),
                         explicit_times.end());

    std::vector<TimeRemap::Piece> pieces;
    if (clamped.kind() == ProblemKind::DeltaDB) {
        const Time delta = *clamped.delta();
        // Merge the relevant windows [t, t+delta] into maximal blocks.
        std::vector<std::pair<Time, Time>> blocks;
        for (Time t : explicit_times) {
            if (!blocks.empty() && t <= blocks.back().second + 1)
                blocks.back().second = std::max(blocks.back().second, t + delta);
            else
                blocks.emplace_back(t, t + delta);
        }
        Time next_new = 0;
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            const Time start = (k == 0) ? std::min<Time>(blocks[0].first, 1) : next_new;
            pieces.push_back(TimeRemap::Piece{blocks[k].first, start,
                                              blocks[k].second - blocks[k].first});
            next_new = start + (blocks[k].second - blocks[k].first) + 1;
        }
        if (pieces.empty()) pieces.push_back(TimeRemap::Piece{0, 0, 0});
    } else {
        const Time gap_cap = std::max<Time>(1, g.edge_count());
        std::vector<Time> anchors;
        anchors.push_back(0);
        for (Time t : explicit_times)
            if (t != 0) anchors.push_back(t);
        Time next_new = 0;
        for (std::size_t k = 0; k < anchors.size(); ++k) {
            const Time len =
                (k + 1 < anchors.size()) ? std::min(anchors[k + 1] - anchors[k], gap_cap) : 0;
            pieces.push_back(TimeRemap::Piece{anchors[k], next_new, len});
            next_new += len;
        }
    }

    TimeRemap remap(std::move(pieces));
    return CompressResult{detail::rebuild_with_times(clamped, remap), remap};
}

// Lifts a witness of the compressed instance back onto the original one.
// Labels that were collapsed above the deadline horizon floor at their true
// initial time.
inline Delaying lift_witness(const Instance& original, const TimeRemap& remap,
                             const Delaying& compressed) {
    Delaying out = remap.lift(compressed);
    for (std::size_t e = 0; e < out.labels.size(); ++e)
        out.labels[e] = std::max(out.labels[e], original.graph().edge(static_cast<EdgeIx>(e)).time);
    return out;
}

}  // namespace delaybetter
