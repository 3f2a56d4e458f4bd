// Batch front end over the instance/solution interchange formats.
// Exit codes: 0 = yes/accept, 1 = no/reject, 2 = error or exhausted budget.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <delaybetter/delaybetter.hpp>

namespace dbt = delaybetter;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dbt::Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dbt::Error("cannot write '" + path + "'");
    out << content;
}

std::string& invocation_line() {
    static std::string line;
    return line;
}

// Line-oriented key=value report on stderr, emitted on every exit path.
class RunReport {
public:
    explicit RunReport(std::string command) : start_(std::chrono::steady_clock::now()) {
        set("command", std::move(command));
        if (!invocation_line().empty()) set("argv", invocation_line());
    }

    void set(const std::string& key, std::string value) {
        for (auto& [k, v] : fields_)
            if (k == key) {
                v = std::move(value);
                return;
            }
        fields_.emplace_back(key, std::move(value));
    }

    void set(const std::string& key, std::uint64_t value) { set(key, std::to_string(value)); }

    ~RunReport() {
        const auto wall =
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start_)
                .count();
        for (const auto& [k, v] : fields_) std::cerr << k << "=" << v << "\n";
        std::cerr << "wall_ms=" << wall << "\n";
    }

private:
    std::chrono::steady_clock::time_point start_;
    std::vector<std::pair<std::string, std::string>> fields_;
};

int cmd_solve(const std::string& instance_path, const std::string& algo,
              std::uint64_t branch_budget, std::uint64_t state_budget, unsigned jobs,
              const std::string& out_path) {
    RunReport report("solve");
    report.set("file", instance_path);
    try {
        dbt::Instance inst = dbt::parse_instance(read_file(instance_path));
        dbt::SolveOptions opts;
        opts.branch_budget = branch_budget;
        opts.state_budget = state_budget;
        opts.jobs = jobs;
        if (algo != "auto") opts.algorithm = algo;
        dbt::SolveResult res = dbt::solve(inst, opts);
        report.set("algorithm", res.algorithm);
        report.set("answer", res.yes() ? "yes" : "no");
        report.set("branches", res.stats.branches);
        report.set("states", res.stats.states);
        if (!res.yes() && res.reason) report.set("reason", dbt::no_reason_name(*res.reason));
        write_output(out_path, dbt::serialize_solution(inst, res));
        report.set("witness", out_path.empty() ? "-" : out_path);
        return res.yes() ? 0 : 1;
    } catch (const std::exception& e) {
        report.set("answer", "error");
        report.set("reason", e.what());
        return 2;
    }
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path) {
    RunReport report("verify");
    report.set("file", instance_path);
    try {
        dbt::Instance inst = dbt::parse_instance(read_file(instance_path));
        dbt::SolveResult sol = dbt::parse_solution(read_file(solution_path), inst);
        if (!sol.witness) throw dbt::FormatError("solution carries no labels to verify");
        dbt::VerifyReport rep = dbt::verify(inst, *sol.witness);
        report.set("answer", rep.accepted ? "accept" : "reject");
        if (!rep.accepted) {
            report.set("violation", dbt::verify_violation_name(rep.violation));
            report.set("detail", rep.detail);
        }
        for (std::size_t i = 0; i < rep.demands.size(); ++i) {
            const auto& d = rep.demands[i];
            std::string line = d.satisfied ? "ok" : "unmet";
            line += " arrival=";
            line += d.arrival == dbt::kUnreachable ? "inf" : std::to_string(d.arrival);
            line += " deadline=" + std::to_string(inst.demands()[i].deadline);
            report.set("demand." + std::to_string(i), line);
        }
        return rep.accepted ? 0 : 1;
    } catch (const std::exception& e) {
        report.set("answer", "error");
        report.set("reason", e.what());
        return 2;
    }
}

int cmd_reduce(const std::string& from, const std::string& orientation, const std::string& variant,
               const std::string& input_path, const std::string& out_path,
               const std::string& backmap_path) {
    RunReport report("reduce");
    report.set("from", from);
    report.set("file", input_path);
    try {
        dbt::ReductionOutput out;
        if (from == "db") {
            dbt::Instance inst = dbt::parse_instance(read_file(input_path));
            out.instance = dbt::reduce_db_to_delta(inst);
            out.info = dbt::Json{{"reduction", "db-to-delta"}, {"delta", *out.instance.delta()}};
        } else if (from == "delta-db") {
            dbt::Instance inst = dbt::parse_instance(read_file(input_path));
            out = inst.graph().directed() ? dbt::reduce_delta_to_db_directed(inst)
                                          : dbt::reduce_delta_to_db_undirected(inst);
        } else if (from == "nae3sat") {
            dbt::NaeFormula f = dbt::parse_nae_formula(read_file(input_path));
            out = orientation == "directed" ? dbt::reduce_nae_to_db_directed(f)
                                            : dbt::reduce_nae_to_db_undirected(f);
        } else if (from == "cbp-epe") {
            dbt::PrecoloredCubicGraph g = dbt::parse_cubic_graph(read_file(input_path));
            dbt::CbpReductionOptions opts;
            opts.directed = orientation != "undirected";
            opts.ones_variant = variant == "ones";
            out = dbt::reduce_cbpepe_to_delta_db(g, opts);
        } else {
            throw dbt::EngineError(dbt::Fault::InvalidInput, "unknown source problem '" + from + "'");
        }
        write_output(out_path, dbt::serialize_instance(out.instance));
        if (!backmap_path.empty()) {
            dbt::Json doc{{"info", out.info}, {"map", out.back_map.to_json()}};
            write_output(backmap_path, doc.dump(2) + "\n");
        }
        report.set("vertices", static_cast<std::uint64_t>(out.instance.graph().vertex_count()));
        report.set("edges", static_cast<std::uint64_t>(out.instance.graph().edge_count()));
        report.set("demands", static_cast<std::uint64_t>(out.instance.demands().size()));
        report.set("answer", "ok");
        return 0;
    } catch (const std::exception& e) {
        report.set("answer", "error");
        report.set("reason", e.what());
        return 2;
    }
}

int cmd_compress(const std::string& instance_path, const std::string& out_path,
                 const std::string& remap_path) {
    RunReport report("compress");
    report.set("file", instance_path);
    try {
        dbt::Instance inst = dbt::parse_instance(read_file(instance_path));
        dbt::CompressResult res = dbt::compress_lifetime(inst);
        write_output(out_path, dbt::serialize_instance(res.instance));
        if (!remap_path.empty()) {
            dbt::Json pieces = dbt::Json::array();
            for (const auto& p : res.remap.pieces())
                pieces.push_back(dbt::Json{
                    {"orig_start", p.orig_start}, {"new_start", p.new_start}, {"len", p.len}});
            write_output(remap_path, dbt::Json{{"pieces", pieces}}.dump(2) + "\n");
        }
        report.set("t_init", static_cast<std::uint64_t>(res.instance.t_init()));
        report.set("t_max", static_cast<std::uint64_t>(res.instance.t_max()));
        report.set("answer", "ok");
        return 0;
    } catch (const std::exception& e) {
        report.set("answer", "error");
        report.set("reason", e.what());
        return 2;
    }
}

int cmd_generate(const dbt::GenerateParams& params, const std::string& out_path) {
    RunReport report("generate");
    try {
        dbt::Instance inst = dbt::generate_instance(params);
        write_output(out_path, dbt::serialize_instance(inst));
        report.set("answer", "ok");
        return 0;
    } catch (const std::exception& e) {
        report.set("answer", "error");
        report.set("reason", e.what());
        return 2;
    }
}

int cmd_oracle(const std::string& problem, const std::string& input_path,
               const std::string& out_path) {
    RunReport report("oracle");
    report.set("problem", problem);
    try {
        if (problem == "nae3sat") {
            dbt::NaeFormula f = dbt::parse_nae_formula(read_file(input_path));
            dbt::NaeResult res = dbt::solve_nae3sat_brute(f);
            report.set("answer", res.satisfiable ? "yes" : "no");
            if (res.satisfiable) {
                dbt::Json doc{{"assignment", dbt::Json::array()}};
                for (char v : res.assignment) doc["assignment"].push_back(v != 0);
                write_output(out_path, doc.dump(2) + "\n");
            }
            return res.satisfiable ? 0 : 1;
        }
        if (problem == "cbp-epe") {
            dbt::PrecoloredCubicGraph g = dbt::parse_cubic_graph(read_file(input_path));
            dbt::CbpResult res = dbt::solve_cbp_epe_brute(g);
            report.set("answer", res.extendable ? "yes" : "no");
            if (res.extendable) {
                dbt::Json colors = dbt::Json::object();
                for (const auto& [key, c] : res.coloring)
                    colors[key.first + "-" + key.second] = dbt::edge_color_name(c);
                write_output(out_path, dbt::Json{{"coloring", colors}}.dump(2) + "\n");
            }
            return res.extendable ? 0 : 1;
        }
        throw dbt::EngineError(dbt::Fault::InvalidInput, "unknown oracle '" + problem + "'");
    } catch (const std::exception& e) {
        report.set("answer", "error");
        report.set("reason", e.what());
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) {
        if (i) invocation_line() += ' ';
        invocation_line() += argv[i];
    }

    CLI::App app{"Delay decision problems on simple temporal graphs"};
    app.require_subcommand(1);

    // solve
    std::string instance_path, out_path, algo = "auto";
    std::uint64_t branch_budget = 10'000'000, state_budget = 100'000'000, seed = 1;
    unsigned jobs = 1;
    auto* solve = app.add_subcommand("solve", "Decide an instance and emit a solution");
    solve->add_option("instance", instance_path, "instance file")->required();
    solve->add_option("--algo", algo, "auto, pathdb, tree, single-source, fes or brute")
        ->check(CLI::IsMember({"auto", "pathdb", "tree", "single-source", "fes", "brute"}));
    solve->add_option("--branch-budget", branch_budget, "fes branch budget");
    solve->add_option("--state-budget", state_budget, "brute force state budget");
    solve->add_option("--seed", seed, "seed echo for script symmetry (solving is exact)");
    solve->add_option("--jobs", jobs, "worker cap for branch evaluation");
    solve->add_option("-o,--output", out_path, "solution file (default stdout)");

    // verify
    std::string solution_path;
    auto* verify = app.add_subcommand("verify", "Check a solution against an instance");
    verify->add_option("instance", instance_path, "instance file")->required();
    verify->add_option("solution", solution_path, "solution file")->required();

    // reduce
    std::string from, orientation = "undirected", variant = "delta10", backmap_path;
    auto* reduce = app.add_subcommand("reduce", "Run an instance transformation");
    reduce->add_option("--from", from, "db, delta-db, nae3sat or cbp-epe")
        ->required()
        ->check(CLI::IsMember({"db", "delta-db", "nae3sat", "cbp-epe"}));
    reduce->add_option("--orientation", orientation, "directed or undirected output")
        ->check(CLI::IsMember({"directed", "undirected"}));
    reduce->add_option("--variant", variant, "cbp-epe labels: delta10 or ones")
        ->check(CLI::IsMember({"delta10", "ones"}));
    reduce->add_option("input", instance_path, "input file")->required();
    reduce->add_option("-o,--output", out_path, "instance file (default stdout)");
    reduce->add_option("--backmap", backmap_path, "provenance map file");

    // compress
    std::string remap_path;
    auto* compress = app.add_subcommand("compress", "Shrink the lifetime, keep the answer");
    compress->add_option("instance", instance_path, "instance file")->required();
    compress->add_option("-o,--output", out_path, "instance file (default stdout)");
    compress->add_option("--remap", remap_path, "time remap file");

    // generate
    dbt::GenerateParams params;
    std::string kind = "random";
    bool directed_flag = false, path_flag = false;
    std::int64_t delta_opt = -1;
    auto* generate = app.add_subcommand("generate", "Seeded instance generator");
    generate->add_option("--kind", kind, "random, tree, low-fes or lifetime2")
        ->check(CLI::IsMember({"random", "tree", "low-fes", "lifetime2"}));
    generate->add_option("--n", params.n, "vertex count");
    generate->add_option("--m", params.m, "edge count");
    generate->add_option("--demands", params.demand_count, "demand count");
    generate->add_option("--tmax", params.tmax, "label/deadline ceiling");
    generate->add_option("--seed", params.seed, "generator seed");
    generate->add_option("--rho", params.rho, "low-fes feedback bound");
    generate->add_option("--delta", delta_opt, "emit a delta-db instance with this cap");
    generate->add_flag("--directed", directed_flag, "directed footprint");
    generate->add_flag("--path-demands", path_flag, "emit path-db demands");
    generate->add_option("-o,--output", out_path, "instance file (default stdout)");

    // oracle
    std::string problem;
    auto* oracle = app.add_subcommand("oracle", "Brute-force source-problem oracles");
    oracle->add_option("--problem", problem, "nae3sat or cbp-epe")
        ->required()
        ->check(CLI::IsMember({"nae3sat", "cbp-epe"}));
    oracle->add_option("input", instance_path, "input file")->required();
    oracle->add_option("-o,--output", out_path, "witness file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed())
        return cmd_solve(instance_path, algo, branch_budget, state_budget, jobs, out_path);
    if (verify->parsed()) return cmd_verify(instance_path, solution_path);
    if (reduce->parsed())
        return cmd_reduce(from, orientation, variant, instance_path, out_path, backmap_path);
    if (compress->parsed()) return cmd_compress(instance_path, out_path, remap_path);
    if (generate->parsed()) {
        if (kind == "random") params.kind = dbt::GenerateKind::Random;
        else if (kind == "tree") params.kind = dbt::GenerateKind::Tree;
        else if (kind == "low-fes") params.kind = dbt::GenerateKind::LowFes;
        else params.kind = dbt::GenerateKind::Lifetime2;
        params.directed = directed_flag;
        params.path_demands = path_flag;
        if (delta_opt >= 0) params.delta = delta_opt;
        return cmd_generate(params, out_path);
    }
    if (oracle->parsed()) return cmd_oracle(problem, instance_path, out_path);
    return 2;
}
