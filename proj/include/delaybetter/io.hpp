#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "model.hpp"

namespace delaybetter {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw FormatError(where + ": missing key '" + key + "'");
    return *it;
}

inline std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) throw FormatError(where + ": expected a string");
    return j.get<std::string>();
}

inline Time as_time(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw FormatError(where + ": expected an integer");
    return j.get<Time>();
}

}  // namespace detail

// Instance format: {"directed": bool, "vertices": [..], "edges": [{"u","v","time"}],
// "demands": [{"from","to","deadline"(,"path":[["a","b"],..])}] (,"delta": int)}.
// The problem kind is implied: "delta" present <=> delta-db, paths present <=> path-db.
inline Instance parse_instance(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("MALFORMED: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("top level: expected an object");

    const Json& jdir = detail::require(doc, "directed", "top level");
    if (!jdir.is_boolean()) throw FormatError("directed: expected a boolean");
    const bool directed = jdir.get<bool>();

    const Json& jverts = detail::require(doc, "vertices", "top level");
    if (!jverts.is_array()) throw FormatError("vertices: expected an array");
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < jverts.size(); ++i)
        vertices.push_back(detail::as_string(jverts[i], "vertices[" + std::to_string(i) + "]"));

    const Json& jedges = detail::require(doc, "edges", "top level");
    if (!jedges.is_array()) throw FormatError("edges: expected an array");
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < jedges.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        const Json& je = jedges[i];
        if (!je.is_object()) throw FormatError(where + ": expected an object");
        EdgeSpec e;
        e.u = detail::as_string(detail::require(je, "u", where), where + ".u");
        e.v = detail::as_string(detail::require(je, "v", where), where + ".v");
        e.time = detail::as_time(detail::require(je, "time", where), where + ".time");
        edges.push_back(std::move(e));
    }

    TemporalGraph graph = TemporalGraph::make(directed, std::move(vertices), edges);

    const Json& jdemands = detail::require(doc, "demands", "top level");
    if (!jdemands.is_array()) throw FormatError("demands: expected an array");
    std::vector<Demand> demands;
    std::vector<Path> paths;
    bool any_path = false, all_paths = true;
    for (std::size_t i = 0; i < jdemands.size(); ++i) {
        const std::string where = "demands[" + std::to_string(i) + "]";
        const Json& jd = jdemands[i];
        if (!jd.is_object()) throw FormatError(where + ": expected an object");
        const std::string from = detail::as_string(detail::require(jd, "from", where), where + ".from");
        const std::string to = detail::as_string(detail::require(jd, "to", where), where + ".to");
        Demand d;
        auto fu = graph.find_vertex(from);
        auto fv = graph.find_vertex(to);
        if (!fu) throw ValidationError(where + ".from: unknown vertex '" + from + "'");
        if (!fv) throw ValidationError(where + ".to: unknown vertex '" + to + "'");
        d.source = *fu;
        d.target = *fv;
        d.deadline = detail::as_time(detail::require(jd, "deadline", where), where + ".deadline");
        demands.push_back(d);
        auto jp = jd.find("path");
        if (jp == jd.end()) {
            all_paths = false;
            paths.emplace_back();
            continue;
        }
        any_path = true;
        if (!jp->is_array()) throw FormatError(where + ".path: expected an array");
        Path p;
        for (std::size_t k = 0; k < jp->size(); ++k) {
            const std::string pw = where + ".path[" + std::to_string(k) + "]";
            const Json& js = (*jp)[k];
            if (!js.is_array() || js.size() != 2)
                throw FormatError(pw + ": expected a [\"u\",\"v\"] pair");
            p.push_back(resolve_step(graph, detail::as_string(js[0], pw),
                                     detail::as_string(js[1], pw), pw));
        }
        paths.push_back(std::move(p));
    }

    std::optional<Time> delta;
    if (auto jd = doc.find("delta"); jd != doc.end())
        delta = detail::as_time(*jd, "delta");

    if (any_path && !all_paths)
        throw ValidationError("demands: either every demand carries a path or none does");
    if (any_path && delta)
        throw ValidationError("'delta' and prescribed paths cannot be combined");

    ProblemKind kind = delta ? ProblemKind::DeltaDB
                             : (any_path ? ProblemKind::PathDB : ProblemKind::DB);
    if (kind != ProblemKind::PathDB) paths.clear();
    return Instance::make(std::move(graph), kind, std::move(demands), std::move(paths), delta);
}

inline Json instance_to_json(const Instance& inst) {
    const TemporalGraph& g = inst.graph();
    Json doc = Json::object();
    doc["directed"] = g.directed();
    doc["vertices"] = g.vertices();
    Json jedges = Json::array();
    for (const auto& e : g.edges())
        jedges.push_back(Json{{"u", g.vertex_name(e.u)}, {"v", g.vertex_name(e.v)}, {"time", e.time}});
    doc["edges"] = std::move(jedges);
    Json jdemands = Json::array();
    for (std::size_t i = 0; i < inst.demands().size(); ++i) {
        const Demand& d = inst.demands()[i];
        Json jd{{"from", g.vertex_name(d.source)},
                {"to", g.vertex_name(d.target)},
                {"deadline", d.deadline}};
        if (inst.kind() == ProblemKind::PathDB) {
            Json jp = Json::array();
            for (const PathStep& s : inst.path(static_cast<int>(i)))
                jp.push_back(Json::array(
                    {g.vertex_name(step_from(g, s)), g.vertex_name(step_to(g, s))}));
            jd["path"] = std::move(jp);
        }
        jdemands.push_back(std::move(jd));
    }
    doc["demands"] = std::move(jdemands);
    if (inst.delta()) doc["delta"] = *inst.delta();
    return doc;
}

inline std::string serialize_instance(const Instance& inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

// Solution format: {"answer":"yes"|"no", "labels":[{"u","v","time"}],
// "routes":[[{"u","v","time"},..] per demand], "reason": string}.
inline Json solution_to_json(const Instance& inst, const SolveResult& res) {
    const TemporalGraph& g = inst.graph();
    Json doc = Json::object();
    doc["answer"] = res.yes() ? "yes" : "no";
    if (res.witness) {
        Json jl = Json::array();
        for (std::size_t e = 0; e < res.witness->labels.size(); ++e) {
            const Edge& ed = g.edge(static_cast<EdgeIx>(e));
            jl.push_back(Json{{"u", g.vertex_name(ed.u)},
                              {"v", g.vertex_name(ed.v)},
                              {"time", res.witness->labels[e]}});
        }
        doc["labels"] = std::move(jl);
    }
    if (res.yes()) {
        Json jr = Json::array();
        for (const Route& route : res.routes) {
            Json steps = Json::array();
            for (const RouteStep& s : route) {
                PathStep ps{s.edge, s.reversed};
                steps.push_back(Json{{"u", g.vertex_name(step_from(g, ps))},
                                     {"v", g.vertex_name(step_to(g, ps))},
                                     {"time", s.time}});
            }
            jr.push_back(std::move(steps));
        }
        doc["routes"] = std::move(jr);
    }
    if (!res.yes() && res.reason) doc["reason"] = no_reason_name(*res.reason);
    return doc;
}

inline std::string serialize_solution(const Instance& inst, const SolveResult& res) {
    return solution_to_json(inst, res).dump(2) + "\n";
}

// Reads a solution back against the instance it answers.
inline SolveResult parse_solution(const std::string& text, const Instance& inst) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("MALFORMED: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("top level: expected an object");
    const TemporalGraph& g = inst.graph();

    SolveResult res;
    const std::string answer =
        detail::as_string(detail::require(doc, "answer", "top level"), "answer");
    if (answer == "yes")
        res.answer = Answer::Yes;
    else if (answer == "no")
        res.answer = Answer::No;
    else
        throw FormatError("answer: expected \"yes\" or \"no\"");

    if (auto jl = doc.find("labels"); jl != doc.end()) {
        if (!jl->is_array()) throw FormatError("labels: expected an array");
        Delaying w;
        w.labels.assign(g.edge_count(), 0);
        std::vector<char> seen(g.edge_count(), 0);
        for (std::size_t i = 0; i < jl->size(); ++i) {
            const std::string where = "labels[" + std::to_string(i) + "]";
            const Json& je = (*jl)[i];
            if (!je.is_object()) throw FormatError(where + ": expected an object");
            const std::string u = detail::as_string(detail::require(je, "u", where), where + ".u");
            const std::string v = detail::as_string(detail::require(je, "v", where), where + ".v");
            auto e = g.find_edge(u, v);
            if (!e) throw ValidationError(where + ": no edge {" + u + "," + v + "}");
            if (seen[*e]) throw ValidationError(where + ": duplicate label for one edge");
            seen[*e] = 1;
            w.labels[*e] = detail::as_time(detail::require(je, "time", where), where + ".time");
        }
        for (EdgeIx e = 0; e < g.edge_count(); ++e)
            if (!seen[e])
                throw ValidationError("labels: missing edge {" + g.vertex_name(g.edge(e).u) + "," +
                                      g.vertex_name(g.edge(e).v) + "}");
        res.witness = std::move(w);
    }

    if (auto jr = doc.find("routes"); jr != doc.end()) {
        if (!jr->is_array()) throw FormatError("routes: expected an array");
        for (std::size_t i = 0; i < jr->size(); ++i) {
            const Json& jroute = (*jr)[i];
            const std::string rw = "routes[" + std::to_string(i) + "]";
            if (!jroute.is_array()) throw FormatError(rw + ": expected an array");
            Route route;
            for (std::size_t k = 0; k < jroute.size(); ++k) {
                const std::string where = rw + "[" + std::to_string(k) + "]";
                const Json& js = jroute[k];
                if (!js.is_object()) throw FormatError(where + ": expected an object");
                const std::string u = detail::as_string(detail::require(js, "u", where), where);
                const std::string v = detail::as_string(detail::require(js, "v", where), where);
                PathStep ps = resolve_step(g, u, v, where);
                RouteStep s;
                s.edge = ps.edge;
                s.reversed = ps.reversed;
                s.time = detail::as_time(detail::require(js, "time", where), where + ".time");
                route.push_back(s);
            }
            res.routes.push_back(std::move(route));
        }
    }

    if (auto jn = doc.find("reason"); jn != doc.end()) {
        const std::string r = detail::as_string(*jn, "reason");
        for (NoReason c : {NoReason::DeadlineUnsatisfiable, NoReason::PrecedenceCycle,
                           NoReason::StaticallyUnreachable, NoReason::OrientationBlocked})
            if (r == no_reason_name(c)) res.reason = c;
        if (!res.reason) throw FormatError("reason: unknown code '" + r + "'");
    }
    return res;
}

}  // namespace delaybetter
