// pec — parity edge-coloring toolkit.
//
// Subcommands: verify (certificate-producing checkers), solve (exact values
// of p, p̂, c, p_r), construct (the explicit colorings and embeddings).
// JSON on stdout, logs on stderr. Exit codes: 0 valid/success, 1 checked
// invalid (certificate present), 2 usage or input error, 3 inconclusive
// (oversize or timeout).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pec/constructions.hpp"
#include "pec/graph.hpp"
#include "pec/hypercube.hpp"
#include "pec/rset.hpp"
#include "pec/solver.hpp"
#include "pec/verify.hpp"

using nlohmann::json;

namespace {

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pec::Error("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pec::Error("cannot write file: " + path);
    out << content;
}

json walk_json(const pec::Graph& g, const pec::Walk& w) {
    json arr = json::array();
    for (pec::VertexId v : w.vertices()) arr.push_back(g.label(v));
    return arr;
}

json certificate_json(const pec::EdgeColoring& f, const pec::Certificate& cert) {
    json j;
    j["kind"] = pec::to_string(cert.kind);
    j["vertices"] = walk_json(f.graph(), cert.walk);
    json colors = json::array();
    for (pec::ColorId c : cert.detail) colors.push_back(f.color_label(c));
    j["colors"] = colors;
    return j;
}

json rset_certificate_json(const pec::RSetColoring& a, const pec::Certificate& cert) {
    json j;
    j["kind"] = pec::to_string(cert.kind);
    j["vertices"] = walk_json(a.graph, cert.walk);
    j["colors"] = json::array();
    json sel = json::array();
    for (pec::EdgeId e = 0; e < a.graph.edge_count(); ++e)
        sel.push_back({{"u", a.graph.label(a.graph.edge(e).u)},
                       {"v", a.graph.label(a.graph.edge(e).v)},
                       {"color", a.palette_labels[cert.selection[e]]}});
    j["selection"] = sel;
    return j;
}

json coloring_json(const pec::EdgeColoring& f) {
    json edges = json::array();
    const pec::Graph& g = f.graph();
    for (pec::EdgeId e = 0; e < g.edge_count(); ++e)
        edges.push_back({{"u", g.label(g.edge(e).u)},
                         {"v", g.label(g.edge(e).v)},
                         {"color", f.color_label(f.color_of(e))}});
    return {{"colors", f.color_count()}, {"edges", edges}};
}

json rset_json(const pec::RSetColoring& a) {
    json edges = json::array();
    for (pec::EdgeId e = 0; e < a.graph.edge_count(); ++e) {
        json set = json::array();
        for (pec::ColorId c : a.sets[e]) set.push_back(a.palette_labels[c]);
        edges.push_back({{"u", a.graph.label(a.graph.edge(e).u)},
                         {"v", a.graph.label(a.graph.edge(e).v)},
                         {"set", set}});
    }
    return {{"r", a.r}, {"palette", a.palette}, {"edges", edges}};
}

void emit(const json& j, bool text_format) {
    if (text_format) {
        for (auto& [key, value] : j.items())
            std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
                      << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

struct Options {
    std::string kind;
    std::string graph_file, coloring_file, assignment_file, embedding_file, setfam_file;
    std::string out_graph, out_coloring, out_embedding;
    int k = 0, n = 0, m = 0, r = 2;
    std::int64_t budget = pec::SolveBudget{}.max_nodes;
    int edge_limit = 40;
    int max_search_edges = -1;  // -1: per-command default
    bool embed = false;
    bool text = false;
};

int run_verify(const Options& opt) {
    pec::Graph g = pec::parse_graph(slurp(opt.graph_file));
    pec::VerifyOptions vopts{opt.edge_limit};
    json out;
    out["kind"] = opt.kind;

    if (opt.kind == "rset") {
        pec::RSetColoring a = pec::parse_rset(g, slurp(opt.assignment_file));
        pec::RSetOptions ropts;
        ropts.edge_limit = opt.edge_limit;
        pec::Verdict v = pec::verify_rset(a, ropts);
        out["method"] = pec::to_string(v.method);
        out["valid"] = v.valid;
        out["certificate"] = v.certificate ? rset_certificate_json(a, *v.certificate) : json();
        emit(out, opt.text);
        return v.valid ? kExitValid : kExitInvalid;
    }
    if (opt.kind == "embedding") {
        pec::Embedding emb = pec::parse_embedding(g, slurp(opt.embedding_file));
        pec::Verdict v = pec::verify_embedding(g, emb);
        out["method"] = pec::to_string(v.method);
        out["valid"] = v.valid;
        out["certificate"] = json();
        emit(out, opt.text);
        return v.valid ? kExitValid : kExitInvalid;
    }

    pec::EdgeColoring f = pec::parse_coloring(g, slurp(opt.coloring_file));
    pec::Verdict v;
    if (opt.kind == "parity")
        v = pec::check_parity_coloring(f, vopts);
    else if (opt.kind == "spec")
        v = pec::check_spec(f);
    else if (opt.kind == "cycles")
        v = pec::check_cycles_parity(f);
    else if (opt.kind == "conflict-free")
        v = pec::check_conflict_free(f, vopts);
    else if (opt.kind == "4c")
        v = pec::check_four_constraint(f, false);
    else if (opt.kind == "weak4c")
        v = pec::check_four_constraint(f, true);
    else
        throw CLI::ValidationError("verify: unknown kind '" + opt.kind + "'");
    out["method"] = pec::to_string(v.method);
    out["valid"] = v.valid;
    out["certificate"] = v.certificate ? certificate_json(f, *v.certificate) : json();
    emit(out, opt.text);
    return v.valid ? kExitValid : kExitInvalid;
}

int run_solve(const Options& opt) {
    pec::Graph g = pec::parse_graph(slurp(opt.graph_file));
    json out;
    out["kind"] = opt.kind;

    if (opt.kind == "pr") {
        pec::RSetBudget budget;
        budget.max_nodes = opt.budget;
        if (opt.max_search_edges >= 0) budget.max_edges = opt.max_search_edges;
        pec::RSetSolveResult res = pec::solve_p_r(g, opt.r, budget);
        out["value"] = res.value;
        out["status"] = pec::to_string(res.status);
        out["nodes"] = res.nodes_explored;
        out["bounds"] = json::array();
        out["witness"] = res.witness ? rset_json(*res.witness) : json();
        emit(out, opt.text);
        return res.status == pec::SolveStatus::exact ? kExitValid : kExitInconclusive;
    }

    pec::SolveBudget budget;
    budget.max_nodes = opt.budget;
    if (opt.max_search_edges >= 0) budget.max_edges = opt.max_search_edges;
    pec::SolveResult res;
    if (opt.kind == "p")
        res = pec::solve_p(g, budget);
    else if (opt.kind == "spec")
        res = pec::solve_spec(g, budget);
    else if (opt.kind == "cf")
        res = pec::solve_conflict_free(g, budget);
    else
        throw CLI::ValidationError("solve: unknown kind '" + opt.kind + "'");
    out["value"] = res.value;
    out["status"] = pec::to_string(res.status);
    out["nodes"] = res.nodes_explored;
    json bounds = json::array();
    for (auto& [name, value] : res.lower_bounds) bounds.push_back({{"name", name}, {"value", value}});
    out["bounds"] = bounds;
    out["witness"] = res.witness ? coloring_json(*res.witness) : json();
    emit(out, opt.text);
    return res.status == pec::SolveStatus::exact ? kExitValid : kExitInconclusive;
}

int run_construct(const Options& opt) {
    json out;
    out["kind"] = opt.kind;
    std::optional<pec::EdgeColoring> result;
    std::optional<pec::Embedding> embedding;
    std::optional<pec::Graph> embedding_graph;

    if (opt.kind == "canonical") {
        result = pec::canonical(opt.k);
    } else if (opt.kind == "bicanonical") {
        result = pec::bicanonical(opt.k);
    } else if (opt.kind == "product") {
        result = pec::biclique_product(opt.k, opt.r);
    } else if (opt.kind == "path") {
        result = pec::gray_path(opt.n);
    } else if (opt.kind == "cycle") {
        result = pec::cycle(opt.n);
    } else if (opt.kind == "induced") {
        result = pec::canonical_induced(opt.k, opt.n);
    } else if (opt.kind == "setfam") {
        auto fam = pec::parse_set_family(slurp(opt.setfam_file));
        auto sf = pec::setfam_coloring(fam);
        result = sf.coloring;
        out["distinct_differences"] = sf.distinct_differences;
    } else if (opt.kind == "dag") {
        pec::Graph d = pec::parse_graph(slurp(opt.graph_file));
        result = pec::dag_coloring(d);
        auto ok = pec::dag_coloring_parity_ok(*result);
        if (ok && !*ok) throw pec::Error("dag: construction failed self-check");
    } else if (opt.kind == "broom") {
        pec::Graph t = pec::broom(opt.k);
        if (opt.embed) {
            embedding = pec::embed_broom(opt.k);
            if (!pec::verify_embedding(t, *embedding).valid)
                throw pec::Error("broom: embedding failed self-check");
            embedding_graph = t;
            out["dimension"] = embedding->k;
            out["vertices"] = t.vertex_count();
            out["edges"] = t.edge_count();
            if (opt.out_graph.empty())
                out["graph"] = pec::serialize_graph(t);
            else
                spill(opt.out_graph, pec::serialize_graph(t));
        } else {
            // Default payload: the conflict-free (k+1)-coloring of T_k.
            result = pec::broom_conflict_free_coloring(opt.k);
            if (!pec::check_conflict_free(*result, pec::VerifyOptions{t.edge_count()}).valid)
                throw pec::Error("broom: coloring failed self-check");
        }
    } else if (opt.kind == "clique2biclique") {
        pec::Graph g = pec::parse_graph(slurp(opt.graph_file));
        result = pec::clique_to_biclique(pec::parse_coloring(g, slurp(opt.coloring_file)));
    } else if (opt.kind == "absorb") {
        pec::Graph g = pec::parse_graph(slurp(opt.graph_file));
        result = pec::absorb_vertex(pec::parse_coloring(g, slurp(opt.coloring_file)));
    } else {
        throw CLI::ValidationError("construct: unknown kind '" + opt.kind + "'");
    }

    out["valid"] = true;  // constructions self-verify before returning
    if (result) {
        const pec::Graph& g = result->graph();
        out["vertices"] = g.vertex_count();
        out["edges"] = g.edge_count();
        out["colors"] = result->color_count();
        if (opt.out_graph.empty())
            out["graph"] = pec::serialize_graph(g);
        else
            spill(opt.out_graph, pec::serialize_graph(g));
        if (opt.out_coloring.empty())
            out["coloring"] = pec::serialize_coloring(*result);
        else
            spill(opt.out_coloring, pec::serialize_coloring(*result));
    }
    if (embedding) {
        std::string doc = pec::serialize_embedding(*embedding_graph, *embedding);
        if (opt.out_embedding.empty())
            out["embedding"] = doc;
        else
            spill(opt.out_embedding, doc);
    }
    emit(out, opt.text);
    return kExitValid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parity edge-coloring toolkit"};
    app.require_subcommand(1);
    Options opt;

    std::string format = "json";
    app.add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--graph", opt.graph_file, "edge-list file");
        cmd->add_option("--coloring", opt.coloring_file, "coloring file");
        cmd->add_option("--assignment", opt.assignment_file, "r-set assignment file");
        cmd->add_option("--embedding", opt.embedding_file, "embedding file");
        cmd->add_option("--edge-limit", opt.edge_limit, "exhaustive check edge limit");
    };

    CLI::App* verify = app.add_subcommand("verify", "check a coloring, assignment or embedding");
    verify->add_option("kind", opt.kind,
                       "parity|spec|cycles|conflict-free|4c|weak4c|rset|embedding")
        ->required();
    add_common(verify);

    CLI::App* solve = app.add_subcommand("solve", "exact p, spec, conflict-free or r-set values");
    solve->add_option("kind", opt.kind, "p|spec|cf|pr")->required();
    add_common(solve);
    solve->add_option("--budget", opt.budget, "search node budget");
    solve->add_option("--max-search-edges", opt.max_search_edges,
                      "refuse exact search above this edge count");
    solve->add_option("--r", opt.r, "set size for pr");

    CLI::App* construct = app.add_subcommand("construct", "build a verified coloring/embedding");
    construct
        ->add_option("kind", opt.kind,
                     "canonical|bicanonical|product|path|cycle|induced|setfam|dag|broom|"
                     "clique2biclique|absorb")
        ->required();
    add_common(construct);
    construct->add_option("--k", opt.k, "dimension parameter");
    construct->add_option("--n", opt.n, "vertex count parameter");
    construct->add_option("--m", opt.m, "secondary size parameter");
    construct->add_option("--r", opt.r, "multiplier / set size");
    construct->add_option("--setfam", opt.setfam_file, "set family file");
    construct->add_option("--out-graph", opt.out_graph, "write graph file");
    construct->add_option("--out-coloring", opt.out_coloring, "write coloring file");
    construct->add_option("--out-embedding", opt.out_embedding, "write embedding file");
    construct->add_flag("--embed", opt.embed, "emit a hypercube embedding (broom)");

    try {
        app.parse(argc, argv);
        opt.text = format == "text";
        if (verify->parsed()) return run_verify(opt);
        if (solve->parsed()) return run_solve(opt);
        if (construct->parsed()) return run_construct(opt);
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const pec::OversizeError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return kExitInconclusive;
    } catch (const pec::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
