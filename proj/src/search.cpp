#include "chs/search.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include <json.hpp>

namespace chs {

namespace {

double min_incident_angle(const EdgeClass& e, const AngleAssignment& angles) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& inc : e.incidences) m = std::min(m, angles(angle_index(inc.tet, inc.pair)));
    return m;
}

// Canonical key of a triangulation together with its watched edges.
std::string state_key(const Triangulation& tri, const std::vector<EdgeRef>& watch, Signature& sig) {
    const CanonicalForm cf = canonical_form(tri);
    sig = cf.sig;
    const Skeleton sk = compute_skeleton(tri);
    std::vector<int> best;
    for (const auto& m : cf.relabelings) {
        std::vector<int> code;
        for (const auto& ref : watch) {
            std::vector<int> cls;
            for (const auto& inc : sk.edges[sk.edge_class(ref.tet, ref.a, ref.b)].incidences) {
                const Perm4& p = m.vertex_maps[inc.tet];
                cls.push_back(6 * m.tet_image[inc.tet] + edge_number(p[inc.a], p[inc.b]));
            }
            std::sort(cls.begin(), cls.end());
            code.insert(code.end(), cls.begin(), cls.end());
            code.push_back(-1);
        }
        if (best.empty() || code < best) best = std::move(code);
    }
    std::string key = cf.sig.text + "|";
    for (int c : best) key += std::to_string(c) + ",";
    return key;
}

bool distinct_tets(const EdgeClass& e) {
    const int a = e.incidences[0].tet, b = e.incidences[1].tet, c = e.incidences[2].tet;
    return a != b && b != c && a != c;
}

class Searcher {
public:
    explicit Searcher(const SearchOptions& opts) : opts_(opts) {}

    std::optional<SearchNode> reduce(const SearchNode& node, int budget);

    SearchStats stats;
    SearchNode best;
    int best_degree = INT_MAX;

private:
    std::optional<SearchNode> advance(const SearchNode& node, const GeoMoveResult& res, const MoveRecord& rec,
                                      int pop) const;
    void trace(const SearchNode& node, const std::string& key, int degree) const;

    const SearchOptions& opts_;
    std::set<std::string> visited_;
};

std::optional<SearchNode> Searcher::advance(const SearchNode& node, const GeoMoveResult& res,
                                            const MoveRecord& rec, int pop) const {
    SearchNode child;
    child.tri = res.tri();
    child.angles = res.angles;
    for (std::size_t k = 0; k + pop < node.watch.size(); ++k) {
        const auto ref = track_edge(res.frame, node.watch[k]);
        if (!ref) return std::nullopt;
        child.watch.push_back(*ref);
    }
    for (std::size_t k = 0; k + pop < node.guard.size(); ++k) {
        std::array<int, 2> g{};
        for (int i = 0; i < 2; ++i) {
            g[i] = res.frame.old_to_new[node.guard[k][i]];
            if (g[i] < 0) return std::nullopt;
        }
        child.guard.push_back(g);
    }
    const StructureReport report = check_structure(child.tri, child.angles);
    if (!(report.max_tet_violation < 1e-9 && report.max_edge_violation < 1e-9 && report.min_angle > -1e-12))
        return std::nullopt;
    child.depth = node.depth + 1;
    child.moves_taken = node.moves_taken;
    child.moves_taken.push_back(rec);
    return child;
}

void Searcher::trace(const SearchNode& node, const std::string& key, int degree) const {
    if (!opts_.trace) return;
    nlohmann::ordered_json line;
    line["sig"] = node.sig.text;
    line["edges"] = key.substr(key.find('|') + 1);
    line["depth"] = node.depth;
    line["level"] = static_cast<int>(node.watch.size()) - 1;
    line["target_degree"] = degree;
    line["move"] = node.moves_taken.empty() ? nlohmann::ordered_json(nullptr)
                                            : nlohmann::ordered_json::parse(to_json(node.moves_taken.back()));
    *opts_.trace << line.dump() << '\n';
}

std::optional<SearchNode> Searcher::reduce(const SearchNode& input, int budget) {
    const int level = static_cast<int>(input.watch.size()) - 1;
    stats.deepest_recursion = std::max(stats.deepest_recursion, level);
    const Skeleton sk = compute_skeleton(input.tri);
    const EdgeClass& e = sk.edges[sk.edge_class(input.target().tet, input.target().a, input.target().b)];
    if (e.degree() == 3) {
        if (!distinct_tets(e)) return std::nullopt;
        SearchNode done = input;
        done.sig = canonical_signature(done.tri);
        return done;
    }
    if (e.degree() < 3) return std::nullopt;

    SearchNode node = input;
    const std::string key = state_key(node.tri, node.watch, node.sig);
    if (!visited_.insert(key).second) return std::nullopt;
    stats.signatures = static_cast<int>(visited_.size());
    if (stats.signatures > opts_.visited_cap) {
        stats.cap_reached = true;
        return std::nullopt;
    }
    ++stats.nodes_expanded;
    if (level == 0 && e.degree() < best_degree) {
        best_degree = e.degree();
        best = node;
    }
    trace(node, key, e.degree());

    for (const MoveCandidate& c : order_moves(node, opts_, budget > 0)) {
        if (stats.cap_reached) return std::nullopt;
        if (c.kind == MoveCandidate::Kind::Direct) {
            GeoMoveResult res;
            try {
                res = apply_2_3_geometric(node.tri, node.angles, c.tet, c.face, opts_.geo_tol);
            } catch (const MoveBlocked&) {
                continue;
            }
            const auto child = advance(node, res, {MoveRecord::Kind::Move23, c.tet, c.face, -1, level > 0}, 0);
            if (!child) continue;
            if (auto found = reduce(*child, budget)) return found;
            continue;
        }
        SearchNode inner = node;
        inner.watch.push_back(*c.blocking);
        inner.guard.push_back({c.tet, node.tri.gluing(c.tet, c.face)->target_tet});
        const auto ready = reduce(inner, budget - 1);
        if (!ready) continue;
        const int edge_f = ready->target_edge();
        GeoMoveResult res;
        try {
            res = apply_3_2_geometric(ready->tri, ready->angles, edge_f);
        } catch (const MoveBlocked&) {
            continue;
        }
        const auto child = advance(*ready, res, {MoveRecord::Kind::Move32, -1, -1, edge_f, true}, 1);
        if (!child) continue;
        if (auto found = reduce(*child, budget)) return found;
    }
    return std::nullopt;
}

}  // namespace

int SearchNode::target_edge() const {
    return compute_skeleton(tri).edge_class(target().tet, target().a, target().b);
}

int select_pi_edge(const Triangulation& tri, const AngleAssignment& angles, const FlatTet& flat) {
    const Skeleton sk = compute_skeleton(tri);
    const auto& v0 = kEdgeVertices[flat.pi_pair];
    const auto& v1 = kEdgeVertices[5 - flat.pi_pair];
    const int e0 = sk.edge_class(flat.tet, v0[0], v0[1]);
    const int e1 = sk.edge_class(flat.tet, v1[0], v1[1]);
    if (e0 == e1) return e0;
    const double s0 = min_incident_angle(sk.edges[e0], angles);
    const double s1 = min_incident_angle(sk.edges[e1], angles);
    if (s0 != s1) return s0 > s1 ? e0 : e1;
    return std::min(e0, e1);
}

std::vector<MoveCandidate> order_moves(const SearchNode& node, const SearchOptions& opts, bool allow_recursive) {
    const Skeleton sk = compute_skeleton(node.tri);
    const int id = sk.edge_class(node.target().tet, node.target().a, node.target().b);
    const EdgeClass& e = sk.edges[id];
    std::set<int> guarded;
    for (const auto& g : node.guard) guarded.insert(g.begin(), g.end());

    std::vector<MoveCandidate> direct, recursive;
    std::set<std::pair<int, int>> faces;
    for (int i = 0; i < e.degree(); ++i) {
        const EdgeIncidence& inc = e.incidences[i];
        const EdgeIncidence& next = e.incidences[(i + 1) % e.degree()];
        const FaceGluing& g = *node.tri.gluing(inc.tet, inc.exit_face);
        if (g.target_tet == inc.tet || guarded.count(inc.tet) || guarded.count(g.target_tet)) continue;
        const auto face_id = std::min(std::pair{inc.tet, inc.exit_face}, std::pair{g.target_tet, g.perm[inc.exit_face]});
        if (!faces.insert(face_id).second) continue;

        const GeoCheck check = can_2_3_geometric(node.tri, node.angles, inc.tet, inc.exit_face, opts.geo_tol);
        MoveCandidate c;
        c.tet = inc.tet;
        c.face = inc.exit_face;
        if (check.ok) {
            c.key = std::min(node.angles(angle_index(inc.tet, inc.pair)), node.angles(angle_index(next.tet, next.pair)));
            direct.push_back(c);
        } else if (allow_recursive && check.reason == MoveBlocked::Reason::Geometric && check.offending) {
            const int blocking = sk.edge_class(check.offending->tet, check.offending->a, check.offending->b);
            if (blocking == id) continue;
            c.kind = MoveCandidate::Kind::Recursive;
            c.blocking = check.offending;
            c.key = min_incident_angle(sk.edges[blocking], node.angles);
            recursive.push_back(c);
        }
    }
    std::stable_sort(direct.begin(), direct.end(), [](const auto& x, const auto& y) { return x.key < y.key; });
    std::stable_sort(recursive.begin(), recursive.end(), [](const auto& x, const auto& y) { return x.key > y.key; });
    direct.insert(direct.end(), recursive.begin(), recursive.end());
    if (node.depth >= opts.exhaustive_depth && static_cast<int>(direct.size()) > opts.width)
        direct.resize(opts.width);
    return direct;
}

SearchResult reduce_edge_degree(const SearchNode& node, const SearchOptions& opts) {
    Searcher searcher(opts);
    SearchResult result;
    if (auto found = searcher.reduce(node, opts.recursion_budget)) {
        result.success = true;
        result.node = std::move(*found);
    } else {
        result.node = searcher.best_degree == INT_MAX ? node : searcher.best;
    }
    result.stats = searcher.stats;
    return result;
}

RemovalResult remove_flat_tet(const Triangulation& tri, const AngleAssignment& angles, const FlatTet& flat,
                              const SearchOptions& opts) {
    const Skeleton sk = compute_skeleton(tri);
    const int preferred = select_pi_edge(tri, angles, flat);
    std::vector<int> roots = {preferred};
    for (int e : {0, 5}) {
        const auto& v = kEdgeVertices[e == 0 ? flat.pi_pair : 5 - flat.pi_pair];
        const int id = sk.edge_class(flat.tet, v[0], v[1]);
        if (std::find(roots.begin(), roots.end(), id) == roots.end()) roots.push_back(id);
    }

    Searcher searcher(opts);
    RemovalResult out;
    for (int root : roots) {
        if (searcher.stats.cap_reached) break;
        const auto& inc = sk.edges[root].incidences[0];
        SearchNode start;
        start.tri = tri;
        start.angles = angles;
        start.watch = {EdgeRef{inc.tet, inc.a, inc.b}};
        const auto ready = searcher.reduce(start, opts.recursion_budget);
        if (!ready) continue;
        GeoMoveResult res;
        try {
            res = apply_3_2_geometric(ready->tri, ready->angles, ready->target_edge());
        } catch (const MoveBlocked&) {
            continue;
        }
        const StructureReport report = check_structure(res.tri(), res.angles);
        if (!(report.max_tet_violation < 1e-9 && report.max_edge_violation < 1e-9 && report.min_angle > -1e-12))
            continue;
        out.success = true;
        out.tri = res.tri();
        out.angles = res.angles;
        out.moves = ready->moves_taken;
        out.moves.push_back({MoveRecord::Kind::Move32, -1, -1, ready->target_edge(), false});
        out.stats = searcher.stats;
        return out;
    }
    out.stats = searcher.stats;
    out.failure = searcher.stats.cap_reached ? "visited-state cap reached" : "no move sequence found";
    if (searcher.best_degree != INT_MAX) {
        out.tri = searcher.best.tri;
        out.angles = searcher.best.angles;
        out.moves = searcher.best.moves_taken;
    } else {
        out.tri = tri;
        out.angles = angles;
    }
    return out;
}

ReplayResult replay(const Triangulation& tri, const AngleAssignment& angles, const std::vector<MoveRecord>& moves) {
    ReplayResult cur{tri, angles};
    for (const auto& m : moves) {
        GeoMoveResult res = m.kind == MoveRecord::Kind::Move23 ? apply_2_3_geometric(cur.tri, cur.angles, m.tet, m.face)
                                                               : apply_3_2_geometric(cur.tri, cur.angles, m.edge);
        cur = {std::move(res.frame.tri), std::move(res.angles)};
    }
    return cur;
}

std::string to_json(const MoveRecord& move) {
    nlohmann::ordered_json j;
    if (move.kind == MoveRecord::Kind::Move23) {
        j["kind"] = "23";
        j["tet"] = move.tet;
        j["face"] = move.face;
    } else {
        j["kind"] = "32";
        j["edge"] = move.edge;
    }
    j["recursive"] = move.was_recursive;
    return j.dump();
}

}  // namespace chs
