// Command-line front end. Exit codes: 0 success/valid, 2 no strict angle
// structure, 3 exhausted or no interior maximum, 1 usage or I/O error.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chs/io.hpp"
#include "chs/isosig.hpp"
#include "chs/pachner.hpp"
#include "chs/pipeline.hpp"

using namespace chs;

namespace {

constexpr int kOk = 0, kError = 1, kNoAngleStructure = 2, kExhausted = 3;

int cmd_check(const std::string& file) {
    const Triangulation tri = load_triangulation(file);
    const ValidationReport r = validate_ideal(tri);
    std::cout << "tetrahedra " << r.tetrahedra << "\nedges " << r.edge_classes << "\nvertices " << r.vertex_classes
              << " (ideal " << r.ideal_vertices << ", internal " << r.internal_vertices << ", other "
              << r.other_vertices << ")\nclosed " << r.closed << "\norientable " << r.orientable << "\nconnected "
              << r.connected << "\nlow-degree edges " << r.low_degree_edges << '\n';
    for (const auto& issue : r.issues) std::cout << "issue: " << issue << '\n';
    if (!r.one_vertex_ideal()) return kError;
    const auto point = find_interior_point(build_constraints(tri));
    std::cout << "strict angle structure " << (point ? "yes" : "no") << '\n';
    if (point) std::cout << "max-min angle " << point->margin << '\n';
    return point ? kOk : kNoAngleStructure;
}

int cmd_solve(const std::string& file, const MaximizeOptions& opts, bool json) {
    const Triangulation tri = load_triangulation(file);
    const auto out = maximize_volume(tri, opts);
    if (!out) {
        std::cout << (json ? "{\"outcome\":\"NoAngleStructure\"}" : "no strict angle structure") << '\n';
        return kNoAngleStructure;
    }
    if (json) {
        nlohmann::ordered_json j;
        j["outcome"] = to_string(out->kind);
        j["volume"] = out->volume;
        j["iterations"] = out->iterations;
        j["gradient_norm"] = out->gradient_norm;
        j["angles"] = std::vector<double>(out->angles.begin(), out->angles.end());
        auto& flat = j["flat"] = nlohmann::ordered_json::array();
        for (const auto& f : out->flat_tets) flat.push_back({{"tet", f.tet}, {"pi_pair", f.pi_pair}});
        std::cout << j.dump() << '\n';
    } else {
        std::cout.precision(12);
        std::cout << "outcome " << to_string(out->kind) << "\nvolume " << out->volume << "\niterations "
                  << out->iterations << "\ngradient norm " << out->gradient_norm << '\n';
        for (const auto& f : out->flat_tets) std::cout << "flat tet " << f.tet << " pi pair " << f.pi_pair << '\n';
    }
    return out->kind == OutcomeKind::InteriorCHS ? kOk : kExhausted;
}

int cmd_retriangulate(const std::string& file, const Strategy& strategy, PipelineOptions opts, bool trace,
                      const std::string& trace_file, const std::string& out_file) {
    const Triangulation tri = load_triangulation(file);
    std::unique_ptr<std::ofstream> trace_stream;
    if (trace) {
        if (trace_file.empty() || trace_file == "-") {
            opts.search.trace = &std::cerr;
        } else {
            trace_stream = std::make_unique<std::ofstream>(trace_file);
            if (!*trace_stream) throw std::runtime_error("cannot write " + trace_file);
            opts.search.trace = trace_stream.get();
        }
    }
    const ChsResult r = find_chs(tri, strategy, opts);
    std::cout << "phase,action,tets,moves,outcome,volume,flat,seconds\n";
    for (const auto& p : r.log.phases)
        std::cout << p.phase << ',' << p.action << ',' << p.tets << ',' << p.moves << ','
                  << (p.outcome ? to_string(*p.outcome) : "NoAngleStructure") << ',' << p.volume << ','
                  << p.flat_count << ',' << p.seconds << '\n';
    std::cout << "status " << to_string(r.status) << "\nmoves " << r.log.total_moves() << '\n';
    if (r.status == ChsStatus::Success) std::cout << "volume " << std::setprecision(12) << r.volume << '\n';
    if (!out_file.empty()) save_triangulation(r.tri, out_file);
    switch (r.status) {
        case ChsStatus::Success: return kOk;
        case ChsStatus::NoAngleStructure: return kNoAngleStructure;
        case ChsStatus::Exhausted: return kExhausted;
    }
    return kError;
}

int cmd_move(const std::string& file, const std::string& kind, const std::string& at, const std::string& out_file) {
    const Triangulation tri = load_triangulation(file);
    Triangulation result;
    if (kind == "23") {
        int tet = 0, face = 0;
        char sep = 0;
        std::istringstream in(at);
        if (!(in >> tet >> sep >> face) || sep != ':' || !in.eof())
            throw CLI::ValidationError("--at", "2-3 location must be <tet>:<face>");
        result = pachner_2_3(tri, tet, face);
    } else {
        result = pachner_3_2(tri, std::stoi(at));
    }
    if (out_file.empty())
        std::cout << serialize_triangulation(result) << '\n';
    else
        save_triangulation(result, out_file);
    return kOk;
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_bench(const std::string& manifest, const std::string& strategies, const std::string& seeds,
              const std::string& out_file, int phases) {
    std::vector<StrategyKind> kinds;
    for (const auto& s : split(strategies)) kinds.push_back(parse_strategy(s));
    std::vector<std::uint64_t> seed_values;
    for (const auto& s : split(seeds)) seed_values.push_back(std::stoull(s));
    const auto rows = run_bench(read_manifest(manifest), kinds, seed_values, {}, phases);
    std::ofstream out(out_file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_file);
    write_bench_csv(out, rows);
    print_bench_summary(std::cout, rows);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Angle structures, volume maximization and guided retriangulation of ideal triangulations"};
    app.require_subcommand(1);
    std::string file;

    auto* check = app.add_subcommand("check", "Validate a triangulation and test for a strict angle structure");
    check->add_option("file", file, "Triangulation JSON")->required();

    MaximizeOptions mopts;
    bool json = false;
    auto* solve = app.add_subcommand("solve", "Maximize the volume over the angle structure polytope");
    solve->add_option("file", file, "Triangulation JSON")->required();
    solve->add_option("--tol", mopts.grad_tol, "Reduced gradient tolerance");
    solve->add_option("--max-iter", mopts.max_iter, "Iteration cap");
    solve->add_flag("--json", json, "JSON output");

    Strategy strategy;
    PipelineOptions popts;
    std::string strategy_name = "guided", trace_file, out_file;
    auto* retri = app.add_subcommand("retriangulate", "Search for a triangulation carrying the hyperbolic structure");
    retri->add_option("file", file, "Triangulation JSON")->required();
    retri->add_option("--strategy", strategy_name, "guided, random or hybrid")
        ->check(CLI::IsMember({"guided", "random", "hybrid"}));
    retri->add_option("--seed", strategy.seed, "Random seed");
    retri->add_option("--width", popts.search.width, "Search width past the exhaustive depth");
    retri->add_option("--depth", popts.search.exhaustive_depth, "Exhaustive search depth");
    retri->add_option("--phases", strategy.phase_cap, "Phase cap");
    auto* trace = retri->add_option("--trace", trace_file, "Write search nodes as JSON lines (default stderr)")
                      ->expected(0, 1);
    retri->add_option("--out", out_file, "Write the final triangulation here");

    auto* isosig = app.add_subcommand("isosig", "Print the canonical signature");
    isosig->add_option("file", file, "Triangulation JSON")->required();

    std::string kind, at;
    auto* move = app.add_subcommand("move", "Apply a combinatorial Pachner move");
    move->add_option("file", file, "Triangulation JSON")->required();
    move->add_option("--kind", kind, "23 or 32")->required()->check(CLI::IsMember({"23", "32"}));
    move->add_option("--at", at, "<tet>:<face> for 23, edge id for 32")->required();
    move->add_option("--out", out_file, "Write the result here instead of stdout");

    std::string strategies = "guided,random", seeds = "0,1,2";
    int bench_phases = 50;
    auto* bench = app.add_subcommand("bench", "Run strategies over a manifest and write CSV");
    bench->add_option("manifest", file, "Manifest JSON")->required();
    bench->add_option("--strategies", strategies, "Comma-separated strategies");
    bench->add_option("--seeds", seeds, "Comma-separated seeds");
    bench->add_option("--phases", bench_phases, "Phase cap");
    bench->add_option("--out", out_file, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kError;
    }

    try {
        if (*check) return cmd_check(file);
        if (*solve) return cmd_solve(file, mopts, json);
        if (*retri) {
            strategy.kind = parse_strategy(strategy_name);
            return cmd_retriangulate(file, strategy, popts, trace->count() > 0, trace_file, out_file);
        }
        if (*isosig) {
            std::cout << canonical_signature(load_triangulation(file)).text << '\n';
            return kOk;
        }
        if (*move) return cmd_move(file, kind, at, out_file);
        if (*bench) return cmd_bench(file, strategies, seeds, out_file, bench_phases);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
