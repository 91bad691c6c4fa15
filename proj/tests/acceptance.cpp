// Acceptance gates: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//     acceptance <path-to-chs-cli>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include "chs/isosig.hpp"
#include "chs/lobachevsky.hpp"
#include "chs/pipeline.hpp"
#include "chs/volume.hpp"
#include "oracles.hpp"
#include "states.hpp"
#include "support.hpp"

using namespace chs;
using namespace chs::testing;
using namespace chs::testing::states;
using std::numbers::pi;

namespace {

struct Gate {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& why) {
        if (!ok && pass) detail << "first failure: " << why << "; ";
        pass = pass && ok;
    }
};

std::string run_command(const std::string& cmd, int& status) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
    status = pclose(pipe);
    return out;
}

std::vector<Triangulation> load_dir(const std::string& rel) {
    std::vector<Triangulation> out;
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(data_path(rel)))
        if (entry.path().extension() == ".json" && entry.path().filename() != "manifest.json")
            paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) out.push_back(load_triangulation(p));
    return out;
}

// Every closed one-vertex ideal triangulation in the repository.
std::vector<Triangulation> valid_fixtures() {
    std::vector<Triangulation> out;
    for (const char* dir : {"fixtures", "census", "suite"})
        for (auto& tri : load_dir(dir))
            if (validate_ideal(tri).one_vertex_ideal()) out.push_back(std::move(tri));
    return out;
}

void figure_eight(Gate& g, const std::string& cli) {
    const double l3 = lobachevsky_quadrature(pi / 3);
    const auto start = std::chrono::steady_clock::now();
    int status = 0;
    const std::string out = run_command(cli + " solve " + data_path("fixtures/fig8.json") + " --json", status);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    g.require(status == 0, "exit status " + std::to_string(status));
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(out);
    } catch (const std::exception& e) {
        g.require(false, "unparsable output");
        return;
    }
    g.require(j.value("outcome", "") == "InteriorCHS", "outcome " + j.value("outcome", std::string("?")));
    double worst = 0;
    for (double a : j.at("angles")) worst = std::max(worst, std::abs(a - pi / 3));
    const double vol = j.at("volume").get<double>();
    g.require(j.at("angles").size() == 6 && worst <= 1e-9, "angle error");
    g.require(std::abs(vol - 6 * l3) <= 1e-9 && std::abs(vol - 2.029883212819) <= 1e-9, "volume");
    g.require(seconds < 1.0, "runtime");
    g.detail << "angle err " << worst << ", volume " << std::setprecision(13) << vol << " vs 6L(pi/3) " << 6 * l3
             << std::setprecision(3) << ", " << seconds << " s";
}

void lobachevsky_suite(Gate& g) {
    double worst_quad = 0, worst_id = 0;
    for (int i = 0; i < 1000; ++i) {
        const double x = pi * i / 999.0;
        worst_quad = std::max(worst_quad, std::abs(lobachevsky(x) - lobachevsky_quadrature(x)));
    }
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> arg(-10.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double x = arg(rng);
        worst_id = std::max(worst_id, std::abs(lobachevsky(-x) + lobachevsky(x)));
        worst_id = std::max(worst_id, std::abs(lobachevsky(x + pi) - lobachevsky(x)));
        worst_id = std::max(worst_id,
                            std::abs(lobachevsky(2 * x) - 2 * lobachevsky(x) - 2 * lobachevsky(x + pi / 2)));
    }
    const double l6 = lobachevsky(pi / 6);
    g.require(worst_quad <= 1e-12, "quadrature agreement");
    g.require(worst_id <= 1e-10, "identities");
    g.require(std::abs(l6 - 0.50747080320) <= 1e-10, "L(pi/6)");
    g.detail << "quadrature err " << worst_quad << ", identity err " << worst_id << ", L(pi/6) "
             << std::setprecision(12) << l6;
}

void gradient_check(Gate& g, const std::vector<Triangulation>& fixtures) {
    std::mt19937_64 rng(7);
    double worst = 0;
    int feasible = 0, points = 0;
    for (const auto& tri : fixtures) {
        const auto cs = build_constraints(tri);
        const auto start = find_interior_point(cs);
        if (!start) continue;
        ++feasible;
        const Eigen::MatrixXd B = tangent_basis(cs).columns;
        for (int k = 0; k < 100; ++k, ++points) {
            const AngleAssignment x = random_structure(start->angles, B, rng, 0.9);
            const Eigen::VectorXd grad = reduced_gradient(x, B);
            Eigen::VectorXd fd(B.cols());
            const double h = 1e-6;
            for (Eigen::Index j = 0; j < B.cols(); ++j)
                fd(j) = (volume(AngleAssignment(x + h * B.col(j))) - volume(AngleAssignment(x - h * B.col(j)))) /
                        (2 * h);
            worst = std::max(worst, (grad - fd).cwiseAbs().maxCoeff() / std::max(1.0, grad.cwiseAbs().maxCoeff()));
        }
    }
    g.require(worst <= 1e-6, "finite differences");
    g.require(feasible > 0, "no feasible fixtures");
    g.detail << feasible << " feasible fixtures, " << points << " points, worst relative err " << worst;
}

void geometric_moves(Gate& g) {
    int states = 0, faces = 0, disagree = 0, moves23 = 0, moves32 = 0, blocked32 = 0;
    double sum_err = 0, round_err = 0;
    bool untouched = true, sig_ok = true;
    auto sums = [&](const Triangulation& tri, const AngleAssignment& a) {
        const StructureReport r = check_structure(tri, a);
        sum_err = std::max({sum_err, r.max_tet_violation, r.max_edge_violation});
        g.require(r.min_angle >= 0, "negative angle");
    };
    for (const State& s : random_states(1000, 99)) {
        ++states;
        for (int t = 0; t < s.tri.size(); ++t)
            for (int f = 0; f < 4; ++f) {
                const bool self = s.tri.gluing(t, f)->target_tet == t;
                const GeoCheck check = can_2_3_geometric(s.tri, s.angles, t, f);
                if (self) {
                    disagree += check.ok;
                    continue;
                }
                ++faces;
                const FaceConfiguration cfg = face_configuration(s.tri, t, f);
                const bool oracle = two_three_oracle(
                    [&](char x, char y) { return named_angle(s.angles, cfg.t1, cfg.names1, x, y); },
                    [&](char x, char y) { return named_angle(s.angles, cfg.t2, cfg.names2, x, y); });
                disagree += oracle != check.ok;
                if (!check.ok) continue;
                const GeoMoveResult res = apply_2_3_geometric(s.tri, s.angles, t, f);
                ++moves23;
                sums(res.tri(), res.angles);
                untouched = untouched && untouched_equal(res.frame, s.angles, res.angles);
                const GeoMoveResult back = apply_3_2_geometric(res.tri(), res.angles, fresh_edge(res));
                ++moves32;
                sums(back.tri(), back.angles);
                untouched = untouched && untouched_equal(back.frame, res.angles, back.angles);
                sig_ok = sig_ok && canonical_signature(back.tri()) == canonical_signature(s.tri);
                round_err = std::max(round_err, angle_distance(s.tri, s.angles, back.tri(), back.angles));
            }
        for (const auto& e : compute_edge_classes(s.tri)) {
            if (e.degree() != 3) continue;
            const int a = e.incidences[0].tet, b = e.incidences[1].tet, c = e.incidences[2].tet;
            if (a == b || b == c || a == c) continue;
            try {
                const GeoMoveResult res = apply_3_2_geometric(s.tri, s.angles, e.id);
                ++moves32;
                sums(res.tri(), res.angles);
                untouched = untouched && untouched_equal(res.frame, s.angles, res.angles);
            } catch (const MoveBlocked&) {
                ++blocked32;
            }
        }
    }
    g.require(disagree == 0, "predicate vs oracle");
    g.require(sum_err <= 1e-10, "angle sums");
    g.require(untouched, "uninvolved angles changed");
    g.require(round_err <= 1e-10, "round trip angles");
    g.require(sig_ok, "round trip signature");
    g.require(blocked32 == 0, "3-2 blocked");
    g.detail << states << " states, " << faces << " faces, " << disagree << " disagreements, " << moves23
             << " 2-3 and " << moves32 << " 3-2 moves, sum err " << sum_err << ", round-trip err " << round_err
             << ", blocked 3-2 " << blocked32;
}

// Compass search on a grid of 5^k points around the incumbent over the polytope
// {A x = b, x >= 0}, halving the radius whenever the centre wins. Starts at the
// vertex centroid; shares nothing with the optimizer.
double compass_maximum(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    const auto verts = polytope_vertices(A, b);
    if (verts.empty()) return -std::numeric_limits<double>::infinity();
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(A.cols());
    for (const auto& v : verts) x0 += v;
    x0 = (x0 / static_cast<double>(verts.size())).cwiseMax(0.0);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-10);
    if (lu.dimensionOfKernel() == 0) return volume(x0);
    const Eigen::MatrixXd kernel = lu.kernel();
    const int k = static_cast<int>(kernel.cols());
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(kernel);
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(kernel.rows(), k);

    double radius = 0;
    for (const auto& v : verts) radius = std::max(radius, (Q.transpose() * (v - x0)).cwiseAbs().maxCoeff());
    Eigen::VectorXd y = Eigen::VectorXd::Zero(k);
    double best = volume(x0);
    int total = 1;
    for (int i = 0; i < k; ++i) total *= 5;
    while (radius > 1e-11) {
        Eigen::VectorXd best_y = y;
        for (int code = 0; code < total; ++code) {
            Eigen::VectorXd trial = y;
            for (int i = 0, c = code; i < k; ++i, c /= 5) trial(i) += radius * (c % 5 - 2) / 2.0;
            // Pinned coordinates carry rounding noise around zero.
            const AngleAssignment x = x0 + Q * trial;
            if (x.minCoeff() < -1e-12) continue;
            const double v = volume(AngleAssignment(x.cwiseMax(0.0)));
            if (v > best) {
                best = v;
                best_y = trial;
            }
        }
        if (best_y == y) radius /= 2;
        y = best_y;
    }
    return best;
}

// Maximum over the closed polytope: the compass search on the whole polytope and
// on every face where at most two tetrahedra are pinned to (0, 0, pi), the only
// degenerate shapes a maximizer can have.
double grid_maximum(const ConstraintSystem& cs) {
    const int n = cs.tets;
    const Eigen::MatrixXd& A = cs.eq_matrix;
    const Eigen::VectorXd& b = cs.eq_rhs;
    auto pinned = [&](const std::vector<FlatTet>& flat) {
        Eigen::MatrixXd A2(A.rows() + 3 * flat.size(), A.cols());
        Eigen::VectorXd b2(A2.rows());
        A2.topRows(A.rows()) = A;
        b2.head(A.rows()) = b;
        Eigen::Index r = A.rows();
        for (const FlatTet& f : flat)
            for (int p = 0; p < 3; ++p, ++r) {
                A2.row(r).setZero();
                A2(r, 3 * f.tet + p) = 1;
                b2(r) = p == f.pi_pair ? pi : 0.0;
            }
        return compass_maximum(A2, b2);
    };
    double best = compass_maximum(A, b);
    for (int t = 0; t < n; ++t)
        for (int p = 0; p < 3; ++p) {
            best = std::max(best, pinned({{t, p}}));
            for (int u = t + 1; u < n; ++u)
                for (int q = 0; q < 3; ++q) best = std::max(best, pinned({{t, p}, {u, q}}));
        }
    return best;
}

void boundary_classification(Gate& g) {
    const Triangulation tri = fixture("flat1");
    const auto out = maximize_volume(tri);
    g.require(out && out->kind == OutcomeKind::Boundary, "not Boundary");
    if (!out) return;
    int near = 0;
    for (int t = 0; t < tri.size(); ++t) {
        const Eigen::Vector3d a = out->angles.segment<3>(3 * t);
        if (a.minCoeff() >= 1e-4) continue;
        ++near;
        std::array<double, 3> s = {a(0), a(1), a(2)};
        std::sort(s.begin(), s.end());
        g.require(s[0] < 1e-4 && s[1] < 1e-4 && s[2] > pi - 1e-4, "near-degenerate tet is not flat");
    }
    const FlatClassification c = classify_flat(out->angles, 1e-4);
    g.require(c.anomalies.empty(), "anomaly tets");
    g.require(near >= 1, "no flat tet");
    const double grid = grid_maximum(build_constraints(tri));
    g.require(std::abs(grid - out->volume) <= 1e-6, "grid oracle volume");
    g.detail << near << " flat, 0 anomalies, volume " << std::setprecision(12) << out->volume << " vs grid "
             << grid << " (diff " << std::setprecision(3) << std::abs(grid - out->volume) << ")";
}

void infeasibility(Gate& g) {
    for (const char* name : {"deg2", "tref"}) {
        const Triangulation tri = fixture(name);
        const ChsResult r = find_chs(tri, Strategy{});
        const auto cs = build_constraints(tri);
        const bool oracle = strictly_feasible_oracle(cs.eq_matrix, cs.eq_rhs);
        g.require(r.status == ChsStatus::NoAngleStructure, std::string(name) + " status");
        g.require(!oracle, std::string(name) + " oracle");
        g.detail << name << ": " << to_string(r.status) << ", oracle " << (oracle ? "feasible" : "infeasible") << "; ";
    }
}

void guided_suite(Gate& g) {
    const auto fixtures = read_manifest(data_path("suite/manifest.json"));
    const std::vector<std::uint64_t> seeds = {0, 1, 2};
    const auto guided = run_bench(fixtures, {StrategyKind::Guided}, seeds, {}, 30);
    const auto again = run_bench(fixtures, {StrategyKind::Guided}, seeds, {}, 30);
    const auto random = run_bench(fixtures, {StrategyKind::Random}, seeds, {}, 30);

    bool deterministic = guided.size() == again.size();
    for (std::size_t i = 0; deterministic && i < guided.size(); ++i)
        deterministic = guided[i].success == again[i].success && guided[i].phases == again[i].phases &&
                        guided[i].moves == again[i].moves && guided[i].volume == again[i].volume;
    std::map<std::string, std::vector<const BenchRow*>> g_rows, r_rows;
    for (const auto& r : guided) g_rows[r.name].push_back(&r);
    for (const auto& r : random) r_rows[r.name].push_back(&r);
    int success = 0, fewer = 0;
    for (const auto& [name, rows] : g_rows) {
        for (const BenchRow* r : rows)
            deterministic = deterministic && r->phases == rows[0]->phases && r->moves == rows[0]->moves;
        success += rows[0]->success && rows[0]->phases <= 30;
        double mean = 0;
        for (const BenchRow* r : r_rows[name]) mean += r->moves;
        mean /= static_cast<double>(r_rows[name].size());
        fewer += rows[0]->moves < mean;
    }
    const double n = static_cast<double>(g_rows.size());
    g.require(g_rows.size() >= 20, "suite too small");
    g.require(success >= 0.8 * n, "success rate");
    g.require(fewer >= 0.6 * n, "move comparison");
    g.require(deterministic, "nondeterministic");
    g.detail << g_rows.size() << " fixtures, Guided success " << success << ", fewer moves than Random on " << fewer
             << ", deterministic " << (deterministic ? "yes" : "no");
}

void signature_suite(Gate& g, const std::vector<Triangulation>& fixtures) {
    std::mt19937_64 rng(11);
    bool stable = true, distinct = true, roundtrip = true;
    std::vector<std::string> sigs;
    for (const auto& tri : fixtures) {
        const std::string sig = canonical_signature(tri).text;
        for (int k = 0; k < 100; ++k) stable = stable && canonical_signature(shuffled(tri, rng)).text == sig;
        const Triangulation back = decode_signature(sig);
        roundtrip = roundtrip && canonical_signature(back).text == sig && isomorphic(back, tri);
        sigs.push_back(sig);
    }
    int pairs = 0;
    for (std::size_t i = 0; i < fixtures.size(); ++i)
        for (std::size_t j = i + 1; j < fixtures.size(); ++j) {
            if (isomorphic(fixtures[i], fixtures[j])) {
                distinct = distinct && sigs[i] == sigs[j];
                continue;
            }
            ++pairs;
            distinct = distinct && sigs[i] != sigs[j];
        }
    g.require(stable, "relabeling changed a signature");
    g.require(distinct, "distinct fixtures collide");
    g.require(roundtrip, "decode round trip");
    g.detail << fixtures.size() << " fixtures x 100 relabelings, " << pairs << " non-isomorphic pairs";
}

void invariant_gates(Gate& g, const std::vector<Triangulation>& fixtures) {
    int checked = 0, phases = 0, traces = 0;
    for (const auto& tri : fixtures) {
        g.require(static_cast<int>(compute_edge_classes(tri).size()) == tri.size(), "#edges != #tets");
        ++checked;
        if (const auto out = maximize_volume(tri)) {
            ++traces;
            for (std::size_t i = 1; i < out->volume_trace.size(); ++i)
                g.require(out->volume_trace[i] >= out->volume_trace[i - 1] - 1e-12, "volume decreased");
        }
    }
    for (const auto& f : read_manifest(data_path("suite/manifest.json")))
        for (StrategyKind kind : {StrategyKind::Guided, StrategyKind::Random, StrategyKind::Hybrid}) {
            const ChsResult r = find_chs(load_triangulation(f.path), Strategy{kind, 0, 4, 30});
            for (const auto& p : r.log.phases) {
                g.require(p.vertices == 1 && p.edges == p.tets, "vertex census changed");
                ++phases;
            }
            g.require(static_cast<int>(compute_edge_classes(r.tri).size()) == r.tri.size(), "#edges != #tets");
        }
    g.detail << checked << " fixtures, " << traces << " optimizer traces, " << phases << " pipeline phases";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <chs-cli>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::vector<Triangulation> fixtures = valid_fixtures();
    std::vector<std::pair<std::string, std::function<void(Gate&)>>> gates = {
        {"figure-eight end-to-end", [&](Gate& g) { figure_eight(g, cli); }},
        {"Lobachevsky suite", lobachevsky_suite},
        {"gradient check", [&](Gate& g) { gradient_check(g, fixtures); }},
        {"geometric-move suite", geometric_moves},
        {"boundary classification", boundary_classification},
        {"infeasibility gates", infeasibility},
        {"guided retriangulation suite", guided_suite},
        {"signature suite", [&](Gate& g) { signature_suite(g, fixtures); }},
        {"invariant gates", [&](Gate& g) { invariant_gates(g, fixtures); }},
    };
    int failed = 0;
    for (const auto& [name, run] : gates) {
        Gate g;
        try {
            run(g);
        } catch (const std::exception& e) {
            g.require(false, std::string("exception: ") + e.what());
        }
        failed += !g.pass;
        std::cout << (g.pass ? "PASS  " : "FAIL  ") << name << ": " << g.detail.str() << std::endl;
    }
    return failed ? 1 : 0;
}
