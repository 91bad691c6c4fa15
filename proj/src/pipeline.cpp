#include "chs/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "chs/io.hpp"
#include "chs/isosig.hpp"
#include "chs/pachner.hpp"

namespace chs {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

ValidationReport require_ideal(const Triangulation& tri) {
    ValidationReport report = validate_ideal(tri);
    if (!report.one_vertex_ideal()) throw std::logic_error("retriangulation broke the vertex census");
    return report;
}

// Flat tets ordered by the smaller degree of their two pi-edges.
std::vector<FlatTet> removal_order(const Triangulation& tri, std::vector<FlatTet> flat) {
    const Skeleton sk = compute_skeleton(tri);
    auto degree = [&](const FlatTet& f) {
        const auto& a = kEdgeVertices[f.pi_pair];
        const auto& b = kEdgeVertices[5 - f.pi_pair];
        return std::min(sk.edges[sk.edge_class(f.tet, a[0], a[1])].degree(),
                        sk.edges[sk.edge_class(f.tet, b[0], b[1])].degree());
    };
    std::stable_sort(flat.begin(), flat.end(), [&](const FlatTet& x, const FlatTet& y) { return degree(x) < degree(y); });
    return flat;
}

}  // namespace

std::optional<MaximizeOutcome> maximize_volume(const Triangulation& tri, const MaximizeOptions& opts) {
    const ConstraintSystem cs = build_constraints(tri);
    const auto start = find_interior_point(cs);
    if (!start) return std::nullopt;
    return maximize(tri, start->angles, tangent_basis(cs), opts);
}

std::string to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Guided: return "guided";
        case StrategyKind::Random: return "random";
        case StrategyKind::Hybrid: return "hybrid";
    }
    return "?";
}

StrategyKind parse_strategy(const std::string& name) {
    if (name == "guided") return StrategyKind::Guided;
    if (name == "random") return StrategyKind::Random;
    if (name == "hybrid") return StrategyKind::Hybrid;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::string to_string(ChsStatus status) {
    switch (status) {
        case ChsStatus::Success: return "Success";
        case ChsStatus::NoAngleStructure: return "NoAngleStructure";
        case ChsStatus::Exhausted: return "Exhausted";
    }
    return "?";
}

int PhaseLog::total_moves() const {
    int total = 0;
    for (const auto& p : phases) total += p.moves;
    return total;
}

SimplifyResult greedy_simplify(const Triangulation& tri) {
    SimplifyResult out{tri, 0};
    for (bool changed = true; changed;) {
        changed = false;
        const auto edges = compute_edge_classes(out.tri);
        for (int e = 0; e < static_cast<int>(edges.size()) && !changed; ++e) {
            if (edges[e].degree() != 3) continue;
            try {
                out.tri = pachner_3_2(out.tri, e);
                changed = true;
            } catch (const MoveBlocked&) {
            }
        }
        for (int e = 0; e < static_cast<int>(edges.size()) && !changed; ++e) {
            if (edges[e].degree() != 2) continue;
            try {
                out.tri = pachner_2_0_frame(out.tri, edges[e]).tri;
                changed = true;
            } catch (const MoveBlocked&) {
            }
        }
        if (changed) ++out.moves;
    }
    return out;
}

RetriangulationResult random_retriangulate(const Triangulation& tri, std::mt19937_64& rng) {
    RetriangulationResult out{tri, 4 * tri.size(), 0};
    for (int slot = 0; slot < out.attempted; ++slot)
        for (int draw = 0; draw < 20; ++draw) {
            std::uniform_int_distribution<int> pick(0, 4 * out.tri.size() - 1);
            const int k = pick(rng);
            try {
                out.tri = pachner_2_3(out.tri, k / 4, k % 4);
                ++out.moves;
                break;
            } catch (const MoveBlocked&) {
            }
        }
    SimplifyResult simple = greedy_simplify(out.tri);
    out.tri = std::move(simple.tri);
    out.moves += simple.moves;
    return out;
}

ChsResult find_chs(const Triangulation& tri, const Strategy& strategy, const PipelineOptions& opts) {
    if (!validate_ideal(tri).one_vertex_ideal())
        throw std::invalid_argument("find_chs needs a one-vertex ideal triangulation");
    std::mt19937_64 rng(strategy.seed);
    ChsResult result;
    result.tri = tri;
    bool fallback_last = false;

    for (int phase = 1; phase <= strategy.phase_cap; ++phase) {
        const auto start = Clock::now();
        const ValidationReport census = require_ideal(result.tri);
        PhaseRecord rec;
        rec.phase = phase;
        rec.tets = census.tetrahedra;
        rec.edges = census.edge_classes;
        rec.vertices = census.vertex_classes;
        const auto outcome = maximize_volume(result.tri, opts.maximize);
        if (outcome) {
            rec.outcome = outcome->kind;
            rec.volume = outcome->volume;
            rec.flat_count = static_cast<int>(outcome->flat_tets.size());
        }
        if (!outcome && phase == 1) {
            rec.action = "none";
            rec.seconds = since(start);
            result.log.phases.push_back(rec);
            result.log.status = result.status = ChsStatus::NoAngleStructure;
            return result;
        }
        if (outcome && outcome->kind == OutcomeKind::InteriorCHS) {
            rec.action = "none";
            rec.seconds = since(start);
            result.log.phases.push_back(rec);
            result.log.status = result.status = ChsStatus::Success;
            result.angles = outcome->angles;
            result.volume = outcome->volume;
            return result;
        }
        if (phase == strategy.phase_cap) {
            rec.action = "none";
            rec.seconds = since(start);
            result.log.phases.push_back(rec);
            break;
        }

        bool guided = false;
        if (outcome && outcome->kind == OutcomeKind::Boundary) {
            switch (strategy.kind) {
                case StrategyKind::Guided: guided = !fallback_last; break;
                case StrategyKind::Random: guided = false; break;
                case StrategyKind::Hybrid: guided = rec.flat_count < strategy.hybrid_threshold; break;
            }
        }
        Triangulation next = result.tri;
        if (guided) {
            rec.action = "random-fallback";
            for (const FlatTet& flat : removal_order(result.tri, outcome->flat_tets)) {
                RemovalResult removal = remove_flat_tet(result.tri, outcome->angles, flat, opts.search);
                if (removal.success) {
                    rec.action = "guided";
                    rec.moves = static_cast<int>(removal.moves.size());
                    next = std::move(removal.tri);
                    break;
                }
            }
        } else {
            rec.action = strategy.kind == StrategyKind::Guided ? "random-fallback" : "random";
        }
        if (rec.action != "guided") {
            // Random phases re-triangulate the input; compounding them grows the
            // triangulation faster than greedy simplification shrinks it.
            RetriangulationResult random = random_retriangulate(tri, rng);
            rec.moves = random.moves;
            next = std::move(random.tri);
        }
        fallback_last = rec.action == "random-fallback";
        result.tri = std::move(next);
        rec.seconds = since(start);
        result.log.phases.push_back(rec);
    }
    result.log.status = result.status = ChsStatus::Exhausted;
    return result;
}

std::vector<BenchFixture> read_manifest(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw std::runtime_error("cannot open manifest " + manifest.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed manifest: " + std::string(e.what()));
    }
    std::vector<BenchFixture> out;
    for (const auto& entry : j.at("fixtures"))
        out.push_back({entry.at("name").get<std::string>(),
                       manifest.parent_path() / entry.at("path").get<std::string>()});
    return out;
}

std::vector<BenchRow> run_bench(const std::vector<BenchFixture>& fixtures, const std::vector<StrategyKind>& strategies,
                                const std::vector<std::uint64_t>& seeds, const PipelineOptions& opts, int phase_cap) {
    std::vector<BenchRow> rows;
    for (const auto& fixture : fixtures) {
        std::optional<Triangulation> tri;
        std::string note, sig;
        try {
            tri = load_triangulation(fixture.path);
            sig = canonical_signature(*tri).text;
        } catch (const std::exception& e) {
            tri.reset();
            note = e.what();
        }
        for (StrategyKind kind : strategies)
            for (std::uint64_t seed : seeds) {
                BenchRow row;
                row.name = fixture.name;
                row.sig = sig;
                row.strategy = to_string(kind);
                row.seed = seed;
                row.note = note;
                if (tri) {
                    const auto start = Clock::now();
                    try {
                        const ChsResult r = find_chs(*tri, Strategy{kind, seed, 4, phase_cap}, opts);
                        row.success = r.status == ChsStatus::Success;
                        row.phases = static_cast<int>(r.log.phases.size());
                        row.moves = r.log.total_moves();
                        row.volume = r.volume;
                    } catch (const std::exception& e) {
                        row.note = e.what();
                    }
                    row.seconds = since(start);
                }
                rows.push_back(row);
            }
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "name,sig,strategy,seed,success,phases,moves,volume,seconds\n";
    for (const auto& r : rows) {
        std::string sig = r.sig;
        if (!r.note.empty()) {
            sig = "unreadable: " + r.note;
            std::replace(sig.begin(), sig.end(), ',', ';');
            std::replace(sig.begin(), sig.end(), '\n', ' ');
        }
        out << r.name << ',' << sig << ',' << r.strategy << ',' << r.seed << ',' << (r.success ? 1 : 0) << ','
            << r.phases << ',' << r.moves << ',' << std::fixed << std::setprecision(12) << r.volume << ','
            << std::setprecision(6) << r.seconds << '\n';
        out << std::defaultfloat;
    }
}

void print_bench_summary(std::ostream& out, const std::vector<BenchRow>& rows) {
    std::map<std::string, std::vector<const BenchRow*>> by_strategy;
    for (const auto& r : rows) by_strategy[r.strategy].push_back(&r);
    for (const auto& [name, group] : by_strategy) {
        int max_phases = 0, max_moves = 0, successes = 0;
        for (const BenchRow* r : group) {
            max_phases = std::max(max_phases, r->phases);
            max_moves = std::max(max_moves, r->moves);
            successes += r->success;
        }
        const double total = static_cast<double>(group.size());
        out << "strategy " << name << ": " << successes << "/" << group.size() << " successful\n";
        out << "  success rate within k phases:";
        for (int k = 1; k <= max_phases; ++k) {
            int hit = 0;
            for (const BenchRow* r : group) hit += r->success && r->phases <= k;
            out << ' ' << k << ':' << std::fixed << std::setprecision(3) << hit / total;
        }
        out << "\n  success rate within m moves:";
        const int step = std::max(1, (max_moves + 9) / 10);
        for (int m = 0; m <= max_moves; m += step) {
            int hit = 0;
            for (const BenchRow* r : group) hit += r->success && r->moves <= m;
            out << ' ' << m << ':' << std::fixed << std::setprecision(3) << hit / total;
        }
        out << std::defaultfloat << '\n';
    }
}

}  // namespace chs
