#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "io.hpp"
#include "model.hpp"
#include "planar_schedule.hpp"
#include "reach.hpp"

namespace delaybetter {

// Provenance of one generated object, reconstructible from names alone since
// every generated name is namespaced by its gadget.
struct BackMapEntry {
    std::string object;  // vertex | edge | demand
    std::string a;       // vertex name / edge endpoint / demand index
    std::string b;       // second edge endpoint
    std::string gadget;
    std::string source;  // source object in the input
    std::string role;
    Time pinned = -1;    // intended forced time for bold/chain edges
    int index = -1;
    int index2 = -1;
};

struct BackMap {
    std::vector<BackMapEntry> entries;

    Json to_json() const {
        Json arr = Json::array();
        for (const auto& e : entries) {
            Json j{{"object", e.object}, {"a", e.a}};
            if (!e.b.empty()) j["b"] = e.b;
            j["gadget"] = e.gadget;
            j["source"] = e.source;
            j["role"] = e.role;
            if (e.pinned >= 0) j["pinned"] = e.pinned;
            if (e.index >= 0) j["index"] = e.index;
            if (e.index2 >= 0) j["index2"] = e.index2;
            arr.push_back(std::move(j));
        }
        return arr;
    }
};

struct ReductionOutput {
    Instance instance;
    BackMap back_map;
    Json info = Json::object();  // reduction parameters (shift, delta, variant)
};

namespace detail {

// Accumulates a generated instance together with its provenance map.
class GadgetBuilder {
public:
    explicit GadgetBuilder(bool directed) : directed_(directed) {}

    void vertex(const std::string& name, const std::string& gadget, const std::string& source,
                const std::string& role, int index = -1, int index2 = -1) {
        if (!have_.insert(name).second)
            throw EngineError(Fault::InvalidInput, "generated duplicate vertex '" + name + "'");
        vertices_.push_back(name);
        map_.entries.push_back(
            BackMapEntry{"vertex", name, "", gadget, source, role, -1, index, index2});
    }

    void edge(const std::string& u, const std::string& v, Time time, const std::string& gadget,
              const std::string& source, const std::string& role, Time pinned = -1, int index = -1,
              int index2 = -1) {
        edges_.push_back(EdgeSpec{u, v, time});
        map_.entries.push_back(
            BackMapEntry{"edge", u, v, gadget, source, role, pinned, index, index2});
    }

    void demand(const std::string& from, const std::string& to, Time deadline,
                const std::string& gadget, const std::string& source, const std::string& role) {
        demand_names_.push_back({from, to, deadline});
        map_.entries.push_back(BackMapEntry{
            "demand", std::to_string(demand_names_.size() - 1), "", gadget, source, role, -1, -1, -1});
    }

    ReductionOutput build(ProblemKind kind, std::optional<Time> delta, Json info) {
        TemporalGraph g = TemporalGraph::make(directed_, vertices_, edges_);
        std::vector<Demand> demands;
        demands.reserve(demand_names_.size());
        for (const auto& [from, to, deadline] : demand_names_)
            demands.push_back(Demand{g.vertex(from), g.vertex(to), deadline});
        ReductionOutput out{Instance::make(std::move(g), kind, std::move(demands), {}, delta),
                            std::move(map_), std::move(info)};
        return out;
    }

private:
    bool directed_;
    std::vector<std::string> vertices_;
    std::set<std::string> have_;
    std::vector<EdgeSpec> edges_;
    std::vector<std::tuple<std::string, std::string, Time>> demand_names_;
    BackMap map_;
};

inline std::string edge_tag(const TemporalGraph& g, EdgeIx e) {
    return g.vertex_name(g.edge(e).u) + "~" + g.vertex_name(g.edge(e).v);
}

}  // namespace detail

// Rough object count of the undirected gadget, |E| * (delta+1)^2, saturated.
inline std::uint64_t delta_gadget_object_count(std::int64_t edges, Time delta) {
    const std::uint64_t d = static_cast<std::uint64_t>(delta) + 1;
    if (d > 2'000'000) return std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t per_edge = d * d;
    if (edges > 0 && per_edge > std::numeric_limits<std::uint64_t>::max() /
                                    static_cast<std::uint64_t>(edges))
        return std::numeric_limits<std::uint64_t>::max();
    return per_edge * static_cast<std::uint64_t>(edges);
}

// ---------------------------------------------------------------------------
// delta-db <-> db
// ---------------------------------------------------------------------------

// Any delay cap at least as large as the final lifetime never binds.
inline Instance reduce_db_to_delta(const Instance& inst) {
    if (inst.kind() != ProblemKind::DB)
        throw EngineError(Fault::WrongProblemKind, "reduce_db_to_delta takes a db instance");
    return Instance::make(inst.graph(), ProblemKind::DeltaDB, inst.demands(), {}, inst.t_max());
}

// Undirected delta-db -> db. Every original time-edge (u,v,t) (after a uniform
// +2 shift so t >= 3) gets a gadget with delta+1 window sources win_t..win_{t+delta},
// delta two-hop bypass lanes a_j-b_j around the edge, and an exit hub v'. The
// window demand (win_i, exit, i+1) can only be met by a route of exactly three
// hops whose first edge starts at i-1 or later, so each lane pins to one window
// value and exactly one window demand must cross (u,v), forcing
// label(u,v) in [t, t+delta].
//
// Gadget lane and hub edges are emitted before the window fan-in so that
// label enumeration over the output settles the contended edges first.
inline ReductionOutput reduce_delta_to_db_undirected(const Instance& inst) {
    if (inst.kind() != ProblemKind::DeltaDB)
        throw EngineError(Fault::WrongProblemKind, "expected a delta-db instance");
    if (inst.graph().directed())
        throw EngineError(Fault::DirectedInput, "this reduction takes undirected instances");
    const TemporalGraph& g = inst.graph();
    const Time delta = *inst.delta();
    if (delta_gadget_object_count(g.edge_count(), delta) > 2'000'000)
        throw EngineError(Fault::TooLarge,
                          "gadget size |E| * (delta+1)^2 too large to materialize");

    Time min_label = kUnreachable;
    for (const Edge& e : g.edges()) min_label = std::min(min_label, e.time);
    const Time shift = (g.edge_count() > 0 && min_label < 3) ? 2 : 0;

    detail::GadgetBuilder b(false);
    for (const std::string& name : g.vertices()) b.vertex(name, "original", name, "original");
    for (EdgeIx e = 0; e < g.edge_count(); ++e)
        b.edge(g.vertex_name(g.edge(e).u), g.vertex_name(g.edge(e).v), g.edge(e).time + shift,
               "original", detail::edge_tag(g, e), "original");

    // Contended gadget core first: exit hubs and lanes.
    for (EdgeIx e = 0; e < g.edge_count(); ++e) {
        const std::string tag = detail::edge_tag(g, e);
        const std::string vname = g.vertex_name(g.edge(e).v);
        const Time t = g.edge(e).time + shift;
        b.vertex(tag + ":exit", "delta-edge", tag, "exit");
        b.edge(vname, tag + ":exit", 1, "delta-edge", tag, "hub");
        for (int j = 1; j <= delta; ++j) {
            b.vertex(tag + ":a" + std::to_string(j), "delta-edge", tag, "lane_a", j);
            b.vertex(tag + ":b" + std::to_string(j), "delta-edge", tag, "lane_b", j);
            b.edge(tag + ":a" + std::to_string(j), tag + ":b" + std::to_string(j), 1, "delta-edge",
                   tag, "lane_mid", -1, j);
            b.edge(tag + ":b" + std::to_string(j), tag + ":exit", 1, "delta-edge", tag,
                   "lane_exit", -1, j);
        }
        for (Time i = t; i <= t + delta; ++i)
            b.vertex(tag + ":win" + std::to_string(i), "delta-edge", tag, "window",
                     static_cast<int>(i));
    }
    // Window fan-in afterwards.
    for (EdgeIx e = 0; e < g.edge_count(); ++e) {
        const std::string tag = detail::edge_tag(g, e);
        const std::string uname = g.vertex_name(g.edge(e).u);
        const Time t = g.edge(e).time + shift;
        for (Time i = t; i <= t + delta; ++i) {
            const std::string win = tag + ":win" + std::to_string(i);
            b.edge(win, uname, i - 1, "delta-edge", tag, "window_direct", -1,
                   static_cast<int>(i));
            for (int j = 1; j <= delta; ++j)
                b.edge(win, tag + ":a" + std::to_string(j), i - 1, "delta-edge", tag,
                       "window_lane", -1, static_cast<int>(i), j);
        }
    }

    for (std::size_t i = 0; i < inst.demands().size(); ++i) {
        const Demand& d = inst.demands()[i];
        b.demand(g.vertex_name(d.source), g.vertex_name(d.target), d.deadline + shift, "original",
                 "d" + std::to_string(i), "traveler");
    }
    for (EdgeIx e = 0; e < g.edge_count(); ++e) {
        const std::string tag = detail::edge_tag(g, e);
        const Time t = g.edge(e).time + shift;
        for (Time i = t; i <= t + delta; ++i)
            b.demand(tag + ":win" + std::to_string(i), tag + ":exit", i + 1, "delta-edge", tag,
                     "window");
    }

    return b.build(ProblemKind::DB, std::nullopt,
                   Json{{"reduction", "delta-to-db-undirected"},
                        {"shift", shift},
                        {"delta", delta}});
}

// Lifts a delta-db witness of the source instance to a witness of the
// generated db instance: the window matching the chosen label crosses (u,v),
// the remaining windows take distinct bypass lanes.
inline Delaying delta_forward_witness_undirected(const Instance& source,
                                                 const Delaying& source_witness,
                                                 const ReductionOutput& out) {
    const TemporalGraph& sg = source.graph();
    const TemporalGraph& tg = out.instance.graph();
    const Time shift = out.info.at("shift").get<Time>();
    const Time delta = out.info.at("delta").get<Time>();
    Delaying w = out.instance.initial_labels();

    auto set_label = [&](const std::string& u, const std::string& v, Time value) {
        auto e = tg.find_edge(u, v);
        if (!e) throw EngineError(Fault::InvalidInput, "missing edge " + u + " / " + v);
        w.labels[*e] = value;
    };

    for (EdgeIx e = 0; e < sg.edge_count(); ++e) {
        const std::string tag = detail::edge_tag(sg, e);
        const std::string uname = sg.vertex_name(sg.edge(e).u);
        const std::string vname = sg.vertex_name(sg.edge(e).v);
        const Time t = sg.edge(e).time + shift;
        const Time x = source_witness.labels[e] + shift;
        set_label(uname, vname, x);
        set_label(tag + ":win" + std::to_string(x), uname, x - 1);
        set_label(vname, tag + ":exit", x + 1);
        int lane = 1;
        for (Time i = t; i <= t + delta; ++i) {
            if (i == x) continue;
            const std::string win = tag + ":win" + std::to_string(i);
            const std::string a = tag + ":a" + std::to_string(lane);
            const std::string bb = tag + ":b" + std::to_string(lane);
            set_label(win, a, i - 1);
            set_label(a, bb, i);
            set_label(bb, tag + ":exit", i + 1);
            ++lane;
        }
    }
    return w;
}

// Reads the source witness back out of a db witness: original edges carry
// their label minus the shift.
inline Delaying delta_recover_witness_undirected(const Instance& source, const Delaying& db_witness,
                                                 const ReductionOutput& out) {
    const TemporalGraph& sg = source.graph();
    const TemporalGraph& tg = out.instance.graph();
    const Time shift = out.info.at("shift").get<Time>();
    Delaying w;
    w.labels.reserve(sg.edge_count());
    for (EdgeIx e = 0; e < sg.edge_count(); ++e) {
        auto te = tg.find_edge(sg.vertex_name(sg.edge(e).u), sg.vertex_name(sg.edge(e).v));
        w.labels.push_back(db_witness.labels[*te] - shift);
    }
    return w;
}

// Directed delta-db -> db. Each time-edge (u,v,t) becomes
// trailhead u' -> u (time 1), first half u -> uv (time 2t), second half
// uv -> v (time 2t+1), and exit uv -> v' pinned at 2t+2delta+1 by the hermit
// demand (u', v', 2t+2delta+1): the hermit crosses the first half no earlier
// than 2t and no later than 2t+2delta. Travelers get deadline 2t+1 (doubled,
// plus one because arrivals land on odd second-half labels).
inline ReductionOutput reduce_delta_to_db_directed(const Instance& inst) {
    if (inst.kind() != ProblemKind::DeltaDB)
        throw EngineError(Fault::WrongProblemKind, "expected a delta-db instance");
    if (!inst.graph().directed())
        throw EngineError(Fault::UndirectedInput, "this reduction takes directed instances");
    const TemporalGraph& g = inst.graph();
    const Time delta = *inst.delta();

    detail::GadgetBuilder b(true);
    for (const std::string& name : g.vertices()) b.vertex(name, "original", name, "original");
    for (EdgeIx e = 0; e < g.edge_count(); ++e) {
        const std::string tag = detail::edge_tag(g, e);
        b.vertex(tag + ":in", "delta-edge", tag, "trailhead_origin");
        b.vertex(tag + ":mid", "delta-edge", tag, "midpoint");
        b.vertex(tag + ":out", "delta-edge", tag, "exit");
    }
    for (EdgeIx e = 0; e < g.edge_count(); ++e) {
        const std::string tag = detail::edge_tag(g, e);
        const std::string uname = g.vertex_name(g.edge(e).u);
        const std::string vname = g.vertex_name(g.edge(e).v);
        const Time t = g.edge(e).time;
        b.edge(uname, tag + ":mid", 2 * t, "delta-edge", tag, "first_half");
        b.edge(tag + ":mid", vname, 2 * t + 1, "delta-edge", tag, "second_half");
        b.edge(tag + ":mid", tag + ":out", 2 * t + 2 * delta + 1, "delta-edge", tag, "exit");
    }
    for (EdgeIx e = 0; e < g.edge_count(); ++e) {
        const std::string tag = detail::edge_tag(g, e);
        b.edge(tag + ":in", g.vertex_name(g.edge(e).u), 1, "delta-edge", tag, "trailhead");
    }
    for (std::size_t i = 0; i < inst.demands().size(); ++i) {
        const Demand& d = inst.demands()[i];
        b.demand(g.vertex_name(d.source), g.vertex_name(d.target), 2 * d.deadline + 1, "original",
                 "d" + std::to_string(i), "traveler");
    }
    for (EdgeIx e = 0; e < g.edge_count(); ++e) {
        const std::string tag = detail::edge_tag(g, e);
        const Time t = g.edge(e).time;
        b.demand(tag + ":in", tag + ":out", 2 * t + 2 * delta + 1, "delta-edge", tag, "hermit");
    }
    return b.build(ProblemKind::DB, std::nullopt,
                   Json{{"reduction", "delta-to-db-directed"}, {"delta", delta}});
}

inline Delaying delta_forward_witness_directed(const Instance& source,
                                               const Delaying& source_witness,
                                               const ReductionOutput& out) {
    const TemporalGraph& sg = source.graph();
    const TemporalGraph& tg = out.instance.graph();
    Delaying w = out.instance.initial_labels();
    for (EdgeIx e = 0; e < sg.edge_count(); ++e) {
        const std::string tag = detail::edge_tag(sg, e);
        const Time x = source_witness.labels[e] - sg.edge(e).time;  // delay amount
        const Time t = sg.edge(e).time;
        auto first = tg.find_edge(sg.vertex_name(sg.edge(e).u), tag + ":mid");
        auto second = tg.find_edge(tag + ":mid", sg.vertex_name(sg.edge(e).v));
        w.labels[*first] = 2 * (t + x);
        w.labels[*second] = 2 * (t + x) + 1;
    }
    return w;
}

// Recovered source label: half the first-half label.
inline Delaying delta_recover_witness_directed(const Instance& source, const Delaying& db_witness,
                                               const ReductionOutput& out) {
    const TemporalGraph& sg = source.graph();
    const TemporalGraph& tg = out.instance.graph();
    Delaying w;
    w.labels.reserve(sg.edge_count());
    for (EdgeIx e = 0; e < sg.edge_count(); ++e) {
        const std::string tag = detail::edge_tag(sg, e);
        auto first = tg.find_edge(sg.vertex_name(sg.edge(e).u), tag + ":mid");
        w.labels.push_back(db_witness.labels[*first] / 2);
    }
    return w;
}

// ---------------------------------------------------------------------------
// Positive not-all-equal exactly-3 SAT
// ---------------------------------------------------------------------------

// Triples of variable indices, positive occurrences only. A clause may repeat
// a variable; nae(x,x,x) is then simply unsatisfiable.
struct NaeFormula {
    int variable_count = 0;
    std::vector<std::array<int, 3>> clauses;
};

inline NaeFormula parse_nae_formula(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("MALFORMED: ") + e.what());
    }
    NaeFormula f;
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("clauses"))
        throw FormatError("formula: expected {\"n\": int, \"clauses\": [[i,j,k],..]}");
    if (!doc["n"].is_number_integer()) throw FormatError("n: expected an integer");
    f.variable_count = doc["n"].get<int>();
    if (f.variable_count < 0) throw ValidationError("n: must be >= 0");
    for (std::size_t c = 0; c < doc["clauses"].size(); ++c) {
        const Json& jc = doc["clauses"][c];
        if (!jc.is_array() || jc.size() != 3)
            throw FormatError("clauses[" + std::to_string(c) + "]: expected exactly 3 variables");
        std::array<int, 3> clause{};
        for (int k = 0; k < 3; ++k) {
            if (!jc[k].is_number_integer())
                throw FormatError("clauses[" + std::to_string(c) + "]: expected integers");
            clause[k] = jc[k].get<int>();
            if (clause[k] < 0 || clause[k] >= f.variable_count)
                throw ValidationError("clauses[" + std::to_string(c) + "]: variable out of range");
        }
        f.clauses.push_back(clause);
    }
    return f;
}

inline std::string serialize_nae_formula(const NaeFormula& f) {
    Json doc{{"n", f.variable_count}, {"clauses", Json::array()}};
    for (const auto& c : f.clauses) doc["clauses"].push_back(Json::array({c[0], c[1], c[2]}));
    return doc.dump(2) + "\n";
}

struct NaeResult {
    bool satisfiable = false;
    std::vector<char> assignment;  // witness when satisfiable
};

inline NaeResult solve_nae3sat_brute(const NaeFormula& f) {
    if (f.variable_count > 24)
        throw EngineError(Fault::TooLarge, "nae oracle handles at most 24 variables");
    NaeResult res;
    for (std::uint64_t mask = 0; mask < (1ull << f.variable_count); ++mask) {
        bool ok = true;
        for (const auto& c : f.clauses) {
            int trues = 0;
            for (int k = 0; k < 3; ++k) trues += (mask >> c[k]) & 1;
            if (trues == 0 || trues == 3) {
                ok = false;
                break;
            }
        }
        if (ok) {
            res.satisfiable = true;
            res.assignment.resize(f.variable_count);
            for (int v = 0; v < f.variable_count; ++v) res.assignment[v] = (mask >> v) & 1;
            return res;
        }
    }
    return res;
}

// Undirected lifetime-2 construction. All initial labels are 1; satisfying the
// demands with labels in {1,2} is possible exactly when the formula is
// nae-satisfiable.
inline ReductionOutput reduce_nae_to_db_undirected(const NaeFormula& f) {
    detail::GadgetBuilder b(false);
    b.vertex("T", "core", "", "true_hub");
    b.vertex("T'", "core", "", "true_pin");
    b.vertex("F", "core", "", "false_hub");
    b.vertex("F'", "core", "", "false_pin");
    b.edge("F", "F'", 1, "core", "", "pin");
    b.edge("T", "T'", 1, "core", "", "pin");
    b.demand("F'", "F", 1, "core", "", "pin");
    b.demand("T'", "T", 1, "core", "", "pin");

    for (int x = 0; x < f.variable_count; ++x) {
        const std::string sx = "s" + std::to_string(x);
        const std::string txv = "t" + std::to_string(x);
        const std::string mx = "m" + std::to_string(x);
        const std::string src = "x" + std::to_string(x);
        b.vertex(sx, "variable", src, "start", x);
        b.vertex(txv, "variable", src, "end", x);
        b.vertex(mx, "variable", src, "middle", x);
        b.edge(sx, "T", 1, "variable", src, "start_true");
        b.edge(sx, "F", 1, "variable", src, "start_false");
        b.edge(txv, "T", 1, "variable", src, "end_true");
        b.edge(txv, "F", 1, "variable", src, "end_false");
        b.edge(mx, "T", 1, "variable", src, "middle_true");
        b.edge(mx, "F", 1, "variable", src, "middle_false");
        b.demand(sx, "T", 1, "variable", src, "start_pin");
        b.demand(sx, "F", 1, "variable", src, "start_pin");
        b.demand("T'", txv, 2, "variable", src, "end_pin");
        b.demand("F'", txv, 2, "variable", src, "end_pin");
        b.demand(sx, mx, 2, "variable", src, "middle_one_late");
        b.demand(mx, txv, 2, "variable", src, "middle_one_early");
    }
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        const std::string cv = "c" + std::to_string(c);
        const std::string cp = "c'" + std::to_string(c);
        const std::string src = "clause" + std::to_string(c);
        b.vertex(cv, "clause", src, "clause", static_cast<int>(c));
        b.vertex(cp, "clause", src, "partner", static_cast<int>(c));
        b.edge(cv, cp, 1, "clause", src, "pin");
        std::set<int> vars(f.clauses[c].begin(), f.clauses[c].end());
        for (int x : vars)
            b.edge(cv, "m" + std::to_string(x), 1, "clause", src, "membership", -1, x);
        b.demand(cv, cp, 1, "clause", src, "pin");
        b.demand("T", cv, 2, "clause", src, "needs_true");
        b.demand("F", cv, 2, "clause", src, "needs_false");
    }
    return b.build(ProblemKind::DB, std::nullopt,
                   Json{{"reduction", "nae-to-db-undirected"}, {"n", f.variable_count}});
}

// Explicit yes-direction labeling: middle-vertex edges pick the side of the
// assignment, everything else follows the pinned pattern.
inline Delaying nae_forward_solution_undirected(const NaeFormula& f,
                                                const std::vector<char>& assignment,
                                                const ReductionOutput& out) {
    const TemporalGraph& g = out.instance.graph();
    Delaying w = out.instance.initial_labels();
    auto set_label = [&](const std::string& u, const std::string& v, Time value) {
        w.labels[*g.find_edge(u, v)] = value;
    };
    for (int x = 0; x < f.variable_count; ++x) {
        const std::string txv = "t" + std::to_string(x);
        const std::string mx = "m" + std::to_string(x);
        set_label(txv, "T", 2);
        set_label(txv, "F", 2);
        set_label(mx, "T", assignment[x] ? 1 : 2);
        set_label(mx, "F", assignment[x] ? 2 : 1);
    }
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        std::set<int> vars(f.clauses[c].begin(), f.clauses[c].end());
        for (int x : vars) set_label("c" + std::to_string(c), "m" + std::to_string(x), 2);
    }
    return w;
}

// Directed acyclic lifetime-2 construction. The variable gadget routes three
// overlapping two-hop demands so that sending (sT_x -> T) late forces
// (sF_x -> F) early and vice versa; clause vertices reach T (resp. F) only
// through a variable sent late on that side.
inline ReductionOutput reduce_nae_to_db_directed(const NaeFormula& f) {
    detail::GadgetBuilder b(true);
    b.vertex("T", "core", "", "true_hub");
    b.vertex("F", "core", "", "false_hub");
    for (int x = 0; x < f.variable_count; ++x) {
        const std::string s = "s" + std::to_string(x);
        const std::string sT = "sT" + std::to_string(x);
        const std::string sF = "sF" + std::to_string(x);
        const std::string t = "t" + std::to_string(x);
        const std::string tT = "tT" + std::to_string(x);
        const std::string tF = "tF" + std::to_string(x);
        const std::string src = "x" + std::to_string(x);
        for (const auto& [name, role] :
             std::vector<std::pair<std::string, std::string>>{{s, "start"},
                                                              {sT, "start_true"},
                                                              {sF, "start_false"},
                                                              {t, "end"},
                                                              {tT, "end_true"},
                                                              {tF, "end_false"}})
            b.vertex(name, "variable", src, role, x);
        b.edge(sT, s, 1, "variable", src, "into_start");
        b.edge(sF, s, 1, "variable", src, "into_start");
        b.edge(s, tT, 1, "variable", src, "start_to_end");
        b.edge(s, tF, 1, "variable", src, "start_to_end");
        b.edge(tT, t, 1, "variable", src, "into_end");
        b.edge(tF, t, 1, "variable", src, "into_end");
        b.edge(sT, "T", 1, "variable", src, "side_true");
        b.edge("T", tT, 1, "variable", src, "side_true_back");
        b.edge(sF, "F", 1, "variable", src, "side_false");
        b.edge("F", tF, 1, "variable", src, "side_false_back");
        b.demand(s, t, 2, "variable", src, "through");
        b.demand(sT, tT, 2, "variable", src, "through_true");
        b.demand(sF, tF, 2, "variable", src, "through_false");
    }
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        const std::string cv = "c" + std::to_string(c);
        const std::string src = "clause" + std::to_string(c);
        b.vertex(cv, "clause", src, "clause", static_cast<int>(c));
        std::set<int> vars(f.clauses[c].begin(), f.clauses[c].end());
        for (int x : vars) {
            b.edge(cv, "sT" + std::to_string(x), 1, "clause", src, "pick_true", -1, x);
            b.edge(cv, "sF" + std::to_string(x), 1, "clause", src, "pick_false", -1, x);
        }
        b.demand(cv, "T", 2, "clause", src, "needs_true");
        b.demand(cv, "F", 2, "clause", src, "needs_false");
    }
    return b.build(ProblemKind::DB, std::nullopt,
                   Json{{"reduction", "nae-to-db-directed"}, {"n", f.variable_count}});
}

inline Delaying nae_forward_solution_directed(const NaeFormula& f,
                                              const std::vector<char>& assignment,
                                              const ReductionOutput& out) {
    const TemporalGraph& g = out.instance.graph();
    Delaying w = out.instance.initial_labels();
    auto set_label = [&](const std::string& u, const std::string& v, Time value) {
        w.labels[*g.find_edge(u, v)] = value;
    };
    for (int x = 0; x < f.variable_count; ++x) {
        const std::string s = "s" + std::to_string(x);
        const std::string sT = "sT" + std::to_string(x);
        const std::string sF = "sF" + std::to_string(x);
        const std::string t = "t" + std::to_string(x);
        const std::string tT = "tT" + std::to_string(x);
        const std::string tF = "tF" + std::to_string(x);
        if (assignment[x]) {
            set_label(sT, "T", 2);
            set_label(s, tT, 2);
            set_label(tF, t, 2);
            set_label("F", tF, 2);
        } else {
            set_label(sF, "F", 2);
            set_label(s, tF, 2);
            set_label(tT, t, 2);
            set_label("T", tT, 2);
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Edge-precoloring extension on cubic bipartite (planar) graphs
// ---------------------------------------------------------------------------

using EdgeKey = std::pair<std::string, std::string>;

inline EdgeKey canonical_edge_key(std::string u, std::string v) {
    if (u > v) std::swap(u, v);
    return {std::move(u), std::move(v)};
}

using EdgeColoring = std::map<EdgeKey, EdgeColor>;

// Cubic bipartite graph with a fixed neighbor order per vertex and a partial
// proper 3-edge-coloring. Planarity of the input is assumed, not verified.
struct PrecoloredCubicGraph {
    std::vector<std::string> part_a;
    std::vector<std::string> part_b;
    std::map<std::string, std::array<std::string, 3>> adjacency;
    EdgeColoring precolor;  // only R/G/B entries; missing key means uncolored

    // Edges enumerated A-side first, in part_a order then neighbor order.
    std::vector<EdgeKey> edge_list() const {
        std::vector<EdgeKey> edges;
        for (const std::string& a : part_a)
            for (const std::string& nb : adjacency.at(a)) edges.push_back({a, nb});
        return edges;
    }

    EdgeColor color_of(const std::string& a, const std::string& bb) const {
        auto it = precolor.find(canonical_edge_key(a, bb));
        return it == precolor.end() ? EdgeColor::Uncolored : it->second;
    }

    int neighbor_index(const std::string& v, const std::string& w) const {  // 1-based
        const auto& nbs = adjacency.at(v);
        for (int i = 0; i < 3; ++i)
            if (nbs[i] == w) return i + 1;
        throw EngineError(Fault::InvalidInput, "'" + w + "' is not adjacent to '" + v + "'");
    }

    void validate() const {
        std::set<std::string> a_set(part_a.begin(), part_a.end());
        std::set<std::string> b_set(part_b.begin(), part_b.end());
        if (a_set.size() != part_a.size() || b_set.size() != part_b.size())
            throw ValidationError("duplicate vertex in a part");
        for (const std::string& a : part_a)
            if (b_set.count(a)) throw ValidationError("vertex '" + a + "' appears in both parts");
        if (adjacency.size() != part_a.size() + part_b.size())
            throw ValidationError("adjacency must list every vertex exactly once");
        for (const auto& [v, nbs] : adjacency) {
            const bool in_a = a_set.count(v) > 0;
            if (!in_a && !b_set.count(v))
                throw ValidationError("adjacency lists undeclared vertex '" + v + "'");
            std::set<std::string> distinct(nbs.begin(), nbs.end());
            if (distinct.size() != 3)
                throw ValidationError("vertex '" + v + "' needs 3 distinct neighbors");
            for (const std::string& w : nbs) {
                if (in_a ? !b_set.count(w) : !a_set.count(w))
                    throw ValidationError("edge {" + v + "," + w + "} does not cross the parts");
                const auto it = adjacency.find(w);
                if (it == adjacency.end() ||
                    std::find(it->second.begin(), it->second.end(), v) == it->second.end())
                    throw ValidationError("adjacency of '" + w + "' does not list '" + v + "'");
            }
        }
        for (const auto& [key, color] : precolor) {
            if (color == EdgeColor::Uncolored)
                throw ValidationError("precolor entries must be R, G or B");
            auto it = adjacency.find(key.first);
            if (it == adjacency.end() ||
                std::find(it->second.begin(), it->second.end(), key.second) == it->second.end())
                throw ValidationError("precolored edge {" + key.first + "," + key.second +
                                      "} is not in the graph");
        }
    }
};

inline PrecoloredCubicGraph parse_cubic_graph(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("MALFORMED: ") + e.what());
    }
    PrecoloredCubicGraph g;
    if (!doc.is_object() || !doc.contains("A") || !doc.contains("B") || !doc.contains("adj"))
        throw FormatError("expected {\"A\":[..],\"B\":[..],\"adj\":{..},\"precolor\":{..}}");
    for (const auto& v : doc["A"]) g.part_a.push_back(v.get<std::string>());
    for (const auto& v : doc["B"]) g.part_b.push_back(v.get<std::string>());
    for (const auto& [v, nbs] : doc["adj"].items()) {
        if (!nbs.is_array() || nbs.size() != 3)
            throw FormatError("adj." + v + ": expected exactly 3 ordered neighbors");
        g.adjacency[v] = {nbs[0].get<std::string>(), nbs[1].get<std::string>(),
                          nbs[2].get<std::string>()};
    }
    if (doc.contains("precolor")) {
        for (const auto& [key, cval] : doc["precolor"].items()) {
            const auto dash = key.find('-');
            if (dash == std::string::npos)
                throw FormatError("precolor key '" + key + "': expected \"u-v\"");
            const std::string cs = cval.get<std::string>();
            EdgeColor color;
            if (cs == "R") color = EdgeColor::Red;
            else if (cs == "G") color = EdgeColor::Green;
            else if (cs == "B") color = EdgeColor::Blue;
            else throw FormatError("precolor '" + key + "': expected R, G or B");
            g.precolor[canonical_edge_key(key.substr(0, dash), key.substr(dash + 1))] = color;
        }
    }
    g.validate();
    return g;
}

inline std::string serialize_cubic_graph(const PrecoloredCubicGraph& g) {
    Json doc = Json::object();
    doc["A"] = g.part_a;
    doc["B"] = g.part_b;
    Json adj = Json::object();
    for (const std::string& v : g.part_a)
        adj[v] = Json::array({g.adjacency.at(v)[0], g.adjacency.at(v)[1], g.adjacency.at(v)[2]});
    for (const std::string& v : g.part_b)
        adj[v] = Json::array({g.adjacency.at(v)[0], g.adjacency.at(v)[1], g.adjacency.at(v)[2]});
    doc["adj"] = std::move(adj);
    Json pre = Json::object();
    for (const auto& [key, color] : g.precolor)
        pre[key.first + "-" + key.second] = edge_color_name(color);
    doc["precolor"] = std::move(pre);
    return doc.dump(2) + "\n";
}

struct CbpResult {
    bool extendable = false;
    EdgeColoring coloring;  // witness when extendable
};

inline bool coloring_is_proper(const PrecoloredCubicGraph& g, const EdgeColoring& coloring) {
    for (const auto& [v, nbs] : g.adjacency) {
        std::set<EdgeColor> seen;
        for (const std::string& w : nbs) {
            auto it = coloring.find(canonical_edge_key(v, w));
            if (it == coloring.end()) return false;
            if (!seen.insert(it->second).second) return false;
        }
    }
    return true;
}

inline CbpResult solve_cbp_epe_brute(const PrecoloredCubicGraph& g) {
    std::vector<EdgeKey> edges;
    for (const std::string& a : g.part_a)
        for (const std::string& nb : g.adjacency.at(a)) edges.push_back(canonical_edge_key(a, nb));
    std::vector<EdgeKey> open;
    for (const EdgeKey& e : edges)
        if (!g.precolor.count(e)) open.push_back(e);
    if (open.size() > 16)
        throw EngineError(Fault::TooLarge, "precoloring oracle handles at most 16 open edges");

    CbpResult res;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < open.size(); ++i) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
        EdgeColoring coloring = g.precolor;
        std::uint64_t rest = code;
        for (const EdgeKey& e : open) {
            coloring[e] = static_cast<EdgeColor>(rest % 3);
            rest /= 3;
        }
        if (coloring_is_proper(g, coloring)) {
            res.extendable = true;
            res.coloring = std::move(coloring);
            return res;
        }
    }
    return res;
}

struct CbpReductionOptions {
    bool directed = true;
    bool ones_variant = false;  // constant-1 initial labels, plain db output
};

namespace detail {

// A bold time-edge (x, y, t): a feeder chain of duration t-1 plus the demand
// (chain head, y, t) pins label(x,y) to exactly t. With t = 1 only the demand
// is needed.
inline void add_bold_edge(GadgetBuilder& b, const std::string& x, const std::string& y, Time t,
                          bool ones, const std::string& gadget, const std::string& source) {
    b.edge(x, y, ones ? 1 : t, gadget, source, "bold", t);
    if (t == 1) {
        b.demand(x, y, 1, gadget, source, "bold");
        return;
    }
    const std::string tag = x + "~" + y;
    std::string prev = tag + ":c1";
    b.vertex(prev, gadget, source, "chain", 1);
    for (Time k = 2; k <= t - 1; ++k) {
        const std::string next = tag + ":c" + std::to_string(k);
        b.vertex(next, gadget, source, "chain", static_cast<int>(k));
        b.edge(prev, next, ones ? 1 : k - 1, gadget, source, "chain", k - 1);
        prev = next;
    }
    b.edge(prev, x, ones ? 1 : t - 1, gadget, source, "chain", t - 1);
    b.demand(tag + ":c1", y, t, gadget, source, "bold");
}

}  // namespace detail

// Precoloring-extension -> (delta-)delay instance. Side-A vertex gadgets send
// travelers out through a per-neighbor spoke chain whose timing encodes the
// edge color, edge gadgets carry them across at bold times 7/8, 10/11 or
// 13/14, and side-B gadgets collect them; hermit demands force each gadget to
// commit one spoke chain per color. Precolored edges keep only their color's
// crossing vertex.
inline ReductionOutput reduce_cbpepe_to_delta_db(const PrecoloredCubicGraph& g,
                                                 const CbpReductionOptions& opts = {}) {
    g.validate();
    const PlanarSchedule sched;
    const bool ones = opts.ones_variant;
    detail::GadgetBuilder b(opts.directed);
    const char* layer_tag[3] = {"B", "R", "G"};

    for (const std::string& u : g.part_a) {
        b.vertex(u, "vertex-a", u, "hub");
        for (int c = 0; c < kColorCount; ++c) {
            b.vertex(u + ":s" + layer_tag[c], "vertex-a", u, "hermit_source", c);
            for (int i = 1; i <= 3; ++i)
                b.vertex(u + ":" + layer_tag[c] + std::to_string(i), "vertex-a", u, "layer", c, i);
        }
        for (int c = 0; c < kColorCount; ++c)
            detail::add_bold_edge(b, u + ":s" + layer_tag[c], u, sched.a_source_bold[c], ones,
                                  "vertex-a", u);
        for (int j = 1; j <= 3; ++j) {
            b.edge(u, u + ":B" + std::to_string(j), ones ? 1 : sched.nonbold_a_initial, "vertex-a",
                   u, "spoke_a", -1, j, 0);
            b.edge(u + ":B" + std::to_string(j), u + ":R" + std::to_string(j),
                   ones ? 1 : sched.nonbold_a_initial, "vertex-a", u, "spoke_a", -1, j, 1);
            b.edge(u + ":R" + std::to_string(j), u + ":G" + std::to_string(j),
                   ones ? 1 : sched.nonbold_a_initial, "vertex-a", u, "spoke_a", -1, j, 2);
        }
        for (int c = 0; c < kColorCount; ++c)
            for (int i = 1; i <= 2; ++i)
                detail::add_bold_edge(b, u + ":" + layer_tag[c] + std::to_string(i),
                                      u + ":" + layer_tag[c] + std::to_string(i + 1),
                                      sched.a_layer_chain[c][i - 1], ones, "vertex-a", u);
        for (int c = 0; c < kColorCount; ++c)
            b.demand(u + ":s" + layer_tag[c], u + ":" + layer_tag[c] + "3",
                     sched.a_hermit_deadline[c], "vertex-a", u, "hermit");
    }

    for (const std::string& v : g.part_b) {
        b.vertex(v, "vertex-b", v, "hub");
        for (int c = 0; c < kColorCount; ++c) {
            b.vertex(v + ":s" + layer_tag[c], "vertex-b", v, "hermit_source", c);
            for (int i = 1; i <= 3; ++i)
                b.vertex(v + ":" + layer_tag[c] + std::to_string(i), "vertex-b", v, "layer", c, i);
        }
        for (int c = 0; c < kColorCount; ++c) {
            detail::add_bold_edge(b, v + ":s" + layer_tag[c],
                                  v + ":" + layer_tag[c] + "1", sched.b_delivery[c][0], ones,
                                  "vertex-b", v);
            for (int i = 1; i <= 2; ++i)
                detail::add_bold_edge(b, v + ":" + layer_tag[c] + std::to_string(i),
                                      v + ":" + layer_tag[c] + std::to_string(i + 1),
                                      sched.b_delivery[c][i], ones, "vertex-b", v);
        }
        for (int i = 1; i <= 3; ++i) {
            b.edge(v + ":B" + std::to_string(i), v + ":R" + std::to_string(i),
                   ones ? 1 : sched.nonbold_b_initial, "vertex-b", v, "spoke_b", -1, i, 0);
            b.edge(v + ":R" + std::to_string(i), v + ":G" + std::to_string(i),
                   ones ? 1 : sched.nonbold_b_initial, "vertex-b", v, "spoke_b", -1, i, 1);
            b.edge(v + ":G" + std::to_string(i), v, ones ? 1 : sched.nonbold_b_initial, "vertex-b",
                   v, "spoke_b", -1, i, 2);
        }
        for (int c = 0; c < kColorCount; ++c)
            b.demand(v + ":s" + layer_tag[c], v, sched.b_hermit_deadline[c], "vertex-b", v,
                     "hermit");
    }

    for (const EdgeKey& e : g.edge_list()) {
        const std::string& u = e.first;   // side A
        const std::string& v = e.second;  // side B
        const int j = g.neighbor_index(u, v);
        const int i = g.neighbor_index(v, u);
        const std::string tag = u + "~" + v;
        const EdgeColor pre = g.color_of(u, v);
        for (int c = 0; c < kColorCount; ++c) {
            if (pre != EdgeColor::Uncolored && static_cast<int>(pre) != c) continue;
            const std::string cross = tag + ":" + layer_tag[c];
            b.vertex(cross, "edge", tag, "crossing", c);
            detail::add_bold_edge(b, u + ":G" + std::to_string(j), cross, sched.gadget_in[c],
                                  ones, "edge", tag);
            detail::add_bold_edge(b, cross, v + ":B" + std::to_string(i), sched.gadget_out[c],
                                  ones, "edge", tag);
        }
        b.demand(u, v, sched.traveler_deadline, "edge", tag, "traveler");
    }

    std::optional<Time> delta;
    ProblemKind kind = ProblemKind::DB;
    if (!ones) {
        delta = sched.delta_variant_delta;
        kind = ProblemKind::DeltaDB;
    }
    return b.build(kind, delta,
                   Json{{"reduction", "cbpepe-to-delta-db"},
                        {"variant", ones ? "ones" : "delta10"},
                        {"directed", opts.directed}});
}

// Yes-direction delaying for a proper extension: bold edges stay at their
// pinned times and every spoke chain is timed by the color of its edge.
inline Delaying planar_forward_solution(const PrecoloredCubicGraph& g, const EdgeColoring& coloring,
                                        const ReductionOutput& out) {
    for (const auto& [key, color] : g.precolor) {
        auto it = coloring.find(key);
        if (it == coloring.end() || it->second != color)
            throw EngineError(Fault::ImproperColoring,
                              "coloring does not extend the precoloring at {" + key.first + "," +
                                  key.second + "}");
    }
    if (!coloring_is_proper(g, coloring))
        throw EngineError(Fault::ImproperColoring, "coloring is not a proper 3-edge-coloring");

    const PlanarSchedule sched;
    const TemporalGraph& tg = out.instance.graph();
    Delaying w = out.instance.initial_labels();
    for (const BackMapEntry& entry : out.back_map.entries) {
        if (entry.object != "edge") continue;
        auto e = tg.find_edge(entry.a, entry.b);
        if (!e) throw EngineError(Fault::InvalidInput, "back map names a missing edge");
        if (entry.role == "bold" || entry.role == "chain") {
            w.labels[*e] = entry.pinned;
        } else if (entry.role == "spoke_a") {
            const std::string& u = entry.source;
            const std::string& nb = g.adjacency.at(u)[entry.index - 1];
            const int c = static_cast<int>(coloring.at(canonical_edge_key(u, nb)));
            w.labels[*e] = sched.a_spoke[c][entry.index2];
        } else if (entry.role == "spoke_b") {
            const std::string& v = entry.source;
            const std::string& nb = g.adjacency.at(v)[entry.index - 1];
            const int c = static_cast<int>(coloring.at(canonical_edge_key(v, nb)));
            w.labels[*e] = sched.b_spoke[c][entry.index2];
        }
    }
    return w;
}

}  // namespace delaybetter
