#include <hisd/decomposition.hh>
#include <hisd/errors.hh>
#include <hisd/folio.hh>
#include <hisd/graph.hh>
#include <hisd/io.hh>
#include <hisd/oracle.hh>
#include <hisd/reductions.hh>
#include <hisd/special.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using std::string;
using std::vector;

namespace
{
    enum Exit
    {
        ok = 0,
        parse_failure = 2,
        invalid_td = 3,
        cap_exceeded = 4,
        verification_failure = 5
    };

    struct Options
    {
        string graph, pattern, td, coloring, formula, vc_graph, out, manifest;
        string engine = "auto", construction;
        int threads = 1, h = 2, x = -1, vc_budget = -1;
        bool json_output = false, no_witness = false, override_limit = false;
        int n = 0;
        double p = 0.5;
        std::uint64_t seed = 1;
    };

    auto file_hash(const string & path) -> string
    {
        std::ifstream in{path, std::ios::binary};
        std::uint64_t hash = 14695981039346656037ULL;
        char c;
        while (in.get(c)) {
            hash ^= static_cast<unsigned char>(c);
            hash *= 1099511628211ULL;
        }
        char buffer[17];
        std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
        return buffer;
    }

    auto load_pattern(const string & text) -> hisd::Pattern
    {
        if (text.ends_with(".gr") && std::filesystem::exists(text))
            return hisd::Pattern::from_graph(hisd::read_gr_file(text));
        return hisd::parse_pattern(text);
    }

    auto one_based(const vector<int> & vertices) -> vector<int>
    {
        vector<int> result;
        for (int v : vertices)
            result.push_back(v + 1);
        return result;
    }

    auto emit(const Options & o, const json & result) -> void
    {
        if (o.json_output)
            std::cout << result.dump() << "\n";
        else
            for (auto & [key, value] : result.items())
                std::cout << key << ": " << value.dump() << "\n";
    }

    auto cmd_solve(const Options & o) -> json
    {
        auto g = hisd::read_gr_file(o.graph);
        auto h = load_pattern(o.pattern);
        std::optional<hisd::Coloring> coloring;
        if (! o.coloring.empty()) {
            coloring = hisd::read_coloring_file(o.coloring, g.vertex_count());
            hisd::check_coloring(g, h, *coloring);
        }
        const hisd::Coloring * col = coloring ? &*coloring : nullptr;

        auto heuristic = hisd::heuristic_decomposition(g);
        auto td = o.td.empty() ? heuristic : hisd::read_td_file(o.td);
        auto report = hisd::validate(g, td);
        if (! report.valid())
            throw hisd::InvalidDecomposition{report.describe()};

        auto engine = o.engine == "auto" ? hisd::auto_engine(h, col != nullptr) : hisd::parse_engine(o.engine);
        json result;
        std::optional<vector<int>> witness;
        int opt = 0;
        int width = td.width();

        switch (engine) {
            case hisd::Engine::Folio: {
                auto ntd = hisd::niceify(td, g);
                hisd::SolveOptions options;
                options.witness = ! o.no_witness;
                options.threads = o.threads;
                auto r = hisd::solve_folio(g, ntd, h, col, options);
                opt = r.opt;
                witness = r.witness;
                width = r.width_used;
                result["peak_state_count"] = r.peak_state_count;
                break;
            }
            case hisd::Engine::Clique: {
                if (! h.is_clique())
                    throw hisd::InvalidArgument{"clique engine needs a clique pattern"};
                auto ntd = hisd::niceify(td, g);
                opt = hisd::solve_clique_hitting(g, ntd, h.size(), col, o.threads);
                break;
            }
            case hisd::Engine::IndependentSet:
                if (! h.is_independent() || col)
                    throw hisd::InvalidArgument{"independent-set engine needs an uncoloured independent pattern"};
                opt = hisd::solve_independent_set_hitting(g, td, h.size(), o.threads);
                break;
            case hisd::Engine::Matching: {
                if (! col)
                    throw hisd::InvalidArgument{"matching engine needs a colouring"};
                auto r = hisd::solve_colorful_pair(g, *col, h);
                opt = r.size;
                witness = r.cover;
                break;
            }
            case hisd::Engine::Oracle: {
                hisd::OracleOptions options;
                options.override_limit = o.override_limit;
                auto r = hisd::oracle_solve(g, h, col, options);
                opt = r.opt;
                witness = r.witness;
                break;
            }
        }

        json out;
        out["opt"] = opt;
        if (witness && ! o.no_witness)
            out["witness"] = one_based(*witness);
        out["engine"] = hisd::engine_name(engine);
        out["width_used"] = width;
        out["heuristic_width"] = heuristic.width();
        for (auto & [key, value] : result.items())
            out[key] = value;
        return out;
    }

    auto cmd_oracle(const Options & o) -> json
    {
        auto g = hisd::read_gr_file(o.graph);
        auto h = load_pattern(o.pattern);
        std::optional<hisd::Coloring> coloring;
        if (! o.coloring.empty())
            coloring = hisd::read_coloring_file(o.coloring, g.vertex_count());
        hisd::OracleOptions options;
        options.override_limit = o.override_limit;
        auto r = hisd::oracle_solve(g, h, coloring ? &*coloring : nullptr, options);
        json out;
        out["opt"] = r.opt;
        out["witness"] = one_based(r.witness);
        out["occurrence_count"] = r.occurrence_count;
        return out;
    }

    auto vc_kind(const string & construction) -> std::optional<hisd::VcKind>
    {
        if (construction == "vc-k3")
            return hisd::VcKind::K3;
        if (construction == "vc-i3")
            return hisd::VcKind::I3;
        if (construction == "vc-k2k1")
            return hisd::VcKind::K2K1;
        return std::nullopt;
    }

    auto check_clean(const hisd::CleanFormula & f) -> std::optional<json>
    {
        auto report = hisd::validate_clean(f);
        if (report.valid())
            return std::nullopt;
        json out;
        out["clean"] = false;
        out["violations"] = report.violations;
        return out;
    }

    auto build_instance(const Options & o, const hisd::CleanFormula & f) -> hisd::DeletionInstance
    {
        const string & c = o.construction;
        if (c == "k-e")
            return hisd::reduce_k_minus_e(f, o.h);
        if (c == "kh+i2")
            return hisd::reduce_kh_i2(f, o.h);
        if (c == "kvx")
            return hisd::reduce_kvx(f, o.h, o.x < 0 ? 0 : o.x);
        if (c == "khh")
            return hisd::reduce_khh(f, o.h);
        if (c == "colorful") {
            if (o.pattern.empty())
                throw hisd::InvalidArgument{"colorful construction needs --pattern"};
            return hisd::reduce_colorful(f, load_pattern(o.pattern));
        }
        throw hisd::InvalidArgument{"unknown construction '" + c + "'"};
    }

    auto instance_manifest(const hisd::DeletionInstance & instance) -> json
    {
        json out;
        out["construction"] = instance.construction;
        out["h"] = instance.h;
        if (instance.x >= 0)
            out["x"] = instance.x;
        out["s"] = instance.layout.rows;
        out["k"] = instance.budget;
        out["counts"] = {
            {"vertices", instance.graph.vertex_count()},
            {"edges", instance.graph.edge_count()},
            {"central", instance.central.size()},
            {"a_side", instance.layout.a_side.size()},
            {"b_side", instance.layout.b_side.size()}};
        if (! instance.provenance.empty())
            out["formula_hash"] = instance.provenance;
        return out;
    }

    auto write_instance(const Options & o, const hisd::DeletionInstance & instance) -> void
    {
        if (o.out.empty())
            throw hisd::InvalidArgument{"reduce needs --out PREFIX"};
        std::ofstream gr{o.out + ".gr"};
        hisd::write_gr(gr, instance.graph);
        std::ofstream td{o.out + ".td"};
        hisd::write_td(td, instance.hint, instance.graph.vertex_count());
        if (instance.coloring) {
            std::ofstream col{o.out + ".col"};
            hisd::write_coloring(col, *instance.coloring);
        }
        std::ofstream manifest{o.out + ".json"};
        manifest << instance_manifest(instance).dump(2) << "\n";
    }

    auto cmd_reduce(const Options & o, int & status) -> json
    {
        if (auto kind = vc_kind(o.construction)) {
            auto g = hisd::read_gr_file(o.vc_graph);
            auto instance = hisd::reduce_vc_colorful(g, *kind, o.vc_budget < 0 ? 0 : o.vc_budget);
            write_instance(o, instance);
            return instance_manifest(instance);
        }
        auto f = hisd::read_dimacs_file(o.formula);
        if (auto bad = check_clean(f)) {
            status = verification_failure;
            return *bad;
        }
        auto instance = build_instance(o, f);
        write_instance(o, instance);
        return instance_manifest(instance);
    }

    auto cmd_verify(const Options & o, int & status) -> json
    {
        json out;
        if (auto kind = vc_kind(o.construction)) {
            auto g = hisd::read_gr_file(o.vc_graph);
            auto instance = hisd::reduce_vc_colorful(g, *kind);
            auto r = hisd::verify_vc_reduction(instance, g);
            out["construction"] = instance.construction;
            out["vertex_cover"] = r.vertex_cover;
            out["opt"] = r.opt;
            out["expected"] = hisd::vc_budget_map(r.vertex_cover);
            out["vc_plus_edges"] = r.vertex_cover + r.edges;
            out["size_ok"] = r.size_ok;
            out["occurrences_ok"] = r.occurrences_ok;
            out["budget_ok"] = r.budget_ok;
            out["edge_count_ok"] = r.edge_count_ok;
            out["ok"] = r.ok();
            if (! r.ok())
                status = verification_failure;
            return out;
        }
        auto f = hisd::read_dimacs_file(o.formula);
        if (auto bad = check_clean(f)) {
            status = verification_failure;
            return *bad;
        }
        auto instance = build_instance(o, f);
        auto r = hisd::verify_reduction(instance, f);
        out["construction"] = instance.construction;
        out["k"] = r.budget;
        out["budget_identity_ok"] = r.budget_identity_ok;
        out["max_component"] = r.max_component;
        out["component_bound"] = r.component_bound;
        out["p1_ok"] = r.p1_ok;
        out["satisfiable"] = r.satisfiable;
        out["within_budget"] = r.within_budget;
        out["equivalence_ok"] = r.equivalence_ok;
        out["certificate_ok"] = r.certificate_ok;
        out["searched"] = r.searched;
        out["p2_checked"] = r.p2_checked;
        out["p2_ok"] = r.p2_ok;
        out["notes"] = r.notes;
        out["ok"] = r.ok();
        if (! r.ok())
            status = verification_failure;
        return out;
    }

    auto cmd_validate_td(const Options & o, int & status) -> json
    {
        auto g = hisd::read_gr_file(o.graph);
        auto td = hisd::read_td_file(o.td);
        auto report = hisd::validate(g, td);
        json out;
        out["valid"] = report.valid();
        out["width"] = td.width();
        json violations = json::array();
        for (auto & v : report.violations)
            violations.push_back({{"axiom", hisd::axiom_name(v.axiom)}, {"detail", v.detail}});
        out["violations"] = violations;
        if (! report.valid())
            status = invalid_td;
        return out;
    }

    auto cmd_niceify(const Options & o) -> json
    {
        auto g = hisd::read_gr_file(o.graph);
        auto td = o.td.empty() ? hisd::heuristic_decomposition(g) : hisd::read_td_file(o.td);
        auto ntd = hisd::niceify(td, g);
        if (! o.out.empty()) {
            std::ofstream out{o.out};
            hisd::write_td(out, ntd.as_tree_decomposition(), g.vertex_count());
        }
        std::array<int, 4> kinds{};
        for (auto & node : ntd.nodes)
            ++kinds[static_cast<int>(node.kind)];
        json out;
        out["nodes"] = ntd.node_count();
        out["width"] = ntd.width();
        out["leaf"] = kinds[0];
        out["introduce"] = kinds[1];
        out["forget"] = kinds[2];
        out["join"] = kinds[3];
        return out;
    }

    auto cmd_gen_random(const Options & o) -> json
    {
        if (o.n < 0 || o.p < 0.0 || o.p > 1.0)
            throw hisd::InvalidArgument{"need n >= 0 and 0 <= p <= 1"};
        std::mt19937_64 rng{o.seed};
        std::uniform_real_distribution<double> coin{0.0, 1.0};
        hisd::Graph g(o.n);
        for (int u = 0 ; u < o.n ; ++u)
            for (int v = u + 1 ; v < o.n ; ++v)
                if (coin(rng) < o.p)
                    g.add_edge(u, v);
        if (o.out.empty())
            hisd::write_gr(std::cout, g);
        else {
            std::ofstream out{o.out};
            hisd::write_gr(out, g);
        }
        json out;
        out["n"] = g.vertex_count();
        out["m"] = g.edge_count();
        return out;
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"H-IS-Deletion solvers, oracle and reduction generators"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--json", o.json_output, "Single-line JSON output");
    app.add_option("--threads", o.threads, "Worker threads for the DP kernels")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Seed for every random choice");
    app.add_option("--manifest", o.manifest, "Write a run manifest to this path");

    auto solve = app.add_subcommand("solve", "Minimum H-hitting set");
    solve->add_option("--graph", o.graph)->required();
    solve->add_option("--pattern", o.pattern, "Name such as K3, P4, K2,2, K4-e, Kvx:3:1, or a .gr file")->required();
    solve->add_option("--td", o.td, "PACE .td file; min-fill heuristic otherwise");
    solve->add_option("--coloring", o.coloring);
    solve->add_option("--engine", o.engine)->check(CLI::IsMember({"auto", "folio", "clique", "independent-set", "matching", "oracle"}));
    solve->add_flag("--no-witness", o.no_witness);
    solve->add_flag("--override-limit", o.override_limit, "Let the oracle engine run above its size guard");

    auto oracle = app.add_subcommand("oracle", "Exact hitting set over all occurrences");
    oracle->add_option("--graph", o.graph)->required();
    oracle->add_option("--pattern", o.pattern)->required();
    oracle->add_option("--coloring", o.coloring);
    oracle->add_flag("--override-limit", o.override_limit);

    auto constructions = CLI::IsMember({"k-e", "kh+i2", "kvx", "khh", "colorful", "vc-k3", "vc-i3", "vc-k2k1"});
    auto reduce = app.add_subcommand("reduce", "Build a deletion instance from a formula or a graph");
    auto verify = app.add_subcommand("verify", "Check a construction against brute force and the oracle");
    for (auto * sub : {reduce, verify}) {
        sub->set_help_flag("--help", "Print this help message and exit");
        sub->add_option("--construction", o.construction)->required()->check(constructions);
        sub->add_option("--formula", o.formula, "DIMACS CNF");
        sub->add_option("--vc-graph", o.vc_graph, "Graph of maximum degree 3 for the vc-* constructions");
        sub->add_option("--h", o.h, "Pattern size parameter");
        sub->add_option("--x", o.x);
        sub->add_option("--pattern", o.pattern, "Pattern for the colorful construction");
    }
    reduce->add_option("--out", o.out, "Output prefix for .gr, .td, .col and .json")->required();
    reduce->add_option("--vc-budget", o.vc_budget);

    auto validate_td = app.add_subcommand("validate-td", "Check the tree-decomposition axioms");
    validate_td->add_option("--graph", o.graph)->required();
    validate_td->add_option("--td", o.td)->required();

    auto niceify = app.add_subcommand("niceify", "Convert to a nice tree decomposition");
    niceify->add_option("--graph", o.graph)->required();
    niceify->add_option("--td", o.td);
    niceify->add_option("--out", o.out);

    auto gen_random = app.add_subcommand("gen-random", "Seeded G(n, p) graph in .gr format");
    gen_random->add_option("--n", o.n)->required();
    gen_random->add_option("--p", o.p)->required();
    gen_random->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return parse_failure;
    }

    int status = ok;
    auto start = std::chrono::steady_clock::now();
    json result;
    string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "solve")
            result = cmd_solve(o);
        else if (command == "oracle")
            result = cmd_oracle(o);
        else if (command == "reduce")
            result = cmd_reduce(o, status);
        else if (command == "verify")
            result = cmd_verify(o, status);
        else if (command == "validate-td")
            result = cmd_validate_td(o, status);
        else if (command == "niceify")
            result = cmd_niceify(o);
        else
            result = cmd_gen_random(o);
    }
    catch (const hisd::ParseError & e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return parse_failure;
    }
    catch (const hisd::InvalidDecomposition & e) {
        std::cerr << "invalid decomposition: " << e.what() << "\n";
        return invalid_td;
    }
    catch (const hisd::CapExceeded & e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return cap_exceeded;
    }
    catch (const hisd::InvalidArgument & e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return parse_failure;
    }
    double elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (command != "gen-random" || ! o.out.empty())
        emit(o, result);

    if (! o.manifest.empty()) {
        json manifest;
        manifest["command"] = command;
        json inputs = json::object();
        for (auto * path : {&o.graph, &o.td, &o.coloring, &o.formula, &o.vc_graph})
            if (! path->empty())
                inputs[*path] = file_hash(*path);
        if (! o.pattern.empty())
            inputs["pattern"] = o.pattern;
        manifest["inputs"] = inputs;
        if (command == "solve")
            manifest["engine"] = result.value("engine", o.engine);
        manifest["seed"] = o.seed;
        manifest["threads"] = o.threads;
        manifest["result"] = result;
        manifest["wall_time_ms"] = elapsed;
        manifest["exit_status"] = status;
        std::ofstream out{o.manifest};
        out << manifest.dump(2) << "\n";
    }
    return status;
}
