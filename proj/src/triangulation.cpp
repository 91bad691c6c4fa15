#include "chs/triangulation.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace chs {

namespace {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<int> parent_;
};

void require_closed(const Triangulation& tri) {
    if (!tri.closed()) throw InvalidTriangulation("triangulation has unglued faces");
}

/// Vertex-class id of every corner 4*t+v, numbered by first appearance.
std::vector<int> corner_classes(const Triangulation& tri) {
    const int n = tri.size();
    UnionFind corners(4 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = *tri.gluing(t, f);
            for (int v = 0; v < 4; ++v)
                if (v != f) corners.unite(4 * t + v, 4 * g.target_tet + g.perm[v]);
        }
    std::vector<int> id_of_root(4 * n, -1);
    std::vector<int> ids(4 * n);
    int next = 0;
    for (int i = 0; i < 4 * n; ++i) {
        const int r = corners.find(i);
        if (id_of_root[r] < 0) id_of_root[r] = next++;
        ids[i] = id_of_root[r];
    }
    return ids;
}

}  // namespace

void Triangulation::glue(int tet, int face, int target, Perm4 perm) {
    tets[tet].gluings[face] = FaceGluing{target, perm};
    tets[target].gluings[perm[face]] = FaceGluing{tet, perm.inverse()};
}

bool Triangulation::closed() const {
    for (const auto& t : tets)
        for (const auto& g : t.gluings)
            if (!g) return false;
    return true;
}

void check_gluings(const Triangulation& tri) {
    const int n = tri.size();
    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g) continue;
            if (g->target_tet < 0 || g->target_tet >= n)
                throw InvalidTriangulation("gluing of tet " + std::to_string(t) + " face " +
                                           std::to_string(f) + " targets a missing tetrahedron");
            const int back_face = g->perm[f];
            if (g->target_tet == t && back_face == f)
                throw InvalidTriangulation("face " + std::to_string(f) + " of tet " +
                                           std::to_string(t) + " is glued to itself");
            const auto& back = tri.gluing(g->target_tet, back_face);
            if (!back || back->target_tet != t || back->perm != g->perm.inverse())
                throw InvalidTriangulation("gluing of tet " + std::to_string(t) + " face " +
                                           std::to_string(f) + " is not involutive");
        }
    }
}

std::vector<EdgeClass> compute_edge_classes(const Triangulation& tri) {
    require_closed(tri);
    const int n = tri.size();
    std::vector<std::array<bool, 6>> seen(n);
    for (auto& s : seen) s.fill(false);

    std::vector<EdgeClass> classes;
    for (int t = 0; t < n; ++t) {
        for (int e = 0; e < 6; ++e) {
            if (seen[t][e]) continue;
            EdgeClass cls;
            cls.id = static_cast<int>(classes.size());

            int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
            int c = -1, d = -1;
            for (int v = 0; v < 4; ++v) {
                if (v == a || v == b) continue;
                (c < 0 ? c : d) = v;
            }
            const int t0 = t, a0 = a, b0 = b, c0 = c, d0 = d;
            int cur = t;
            for (int step = 0; step <= 6 * n; ++step) {
                const int edge = edge_number(a, b);
                if (seen[cur][edge] && step > 0) break;  // reversed edge; the walk would not close
                seen[cur][edge] = true;
                EdgeIncidence inc;
                inc.tet = cur;
                inc.edge = edge;
                inc.pair = angle_pair_of_edge(edge);
                inc.a = a;
                inc.b = b;
                inc.exit_face = d;
                inc.entry_face = c;
                inc.orientation = a < b;
                cls.incidences.push_back(inc);

                const FaceGluing& g = *tri.gluing(cur, d);
                const Perm4& p = g.perm;
                const int na = p[a], nb = p[b], nc = p[d], nd = p[c];
                cur = g.target_tet;
                a = na;
                b = nb;
                c = nc;
                d = nd;
                if (cur == t0 && a == a0 && b == b0 && c == c0 && d == d0) break;
            }
            classes.push_back(std::move(cls));
        }
    }
    return classes;
}

std::vector<VertexClass> compute_vertex_classes(const Triangulation& tri) {
    require_closed(tri);
    const int n = tri.size();

    // Link vertices are ends of tetrahedron edges: (t, v, w) is the end of edge vw at v.
    auto end_index = [](int t, int v, int w) { return 16 * t + 4 * v + w; };
    UnionFind ends(16 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = *tri.gluing(t, f);
            for (int v = 0; v < 4; ++v)
                for (int w = 0; w < 4; ++w)
                    if (v != w && v != f && w != f)
                        ends.unite(end_index(t, v, w),
                                   end_index(g.target_tet, g.perm[v], g.perm[w]));
        }

    const std::vector<int> corner_class = corner_classes(tri);
    int count = 0;
    for (int id : corner_class) count = std::max(count, id + 1);
    std::vector<VertexClass> classes(count);
    for (int i = 0; i < count; ++i) classes[i].id = i;
    for (int id : corner_class) classes[id].size += 1;

    std::vector<int> link_vertices(classes.size(), 0);
    std::vector<bool> end_root_seen(16 * n, false);
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v)
            for (int w = 0; w < 4; ++w) {
                if (v == w) continue;
                const int r = ends.find(end_index(t, v, w));
                if (!end_root_seen[r]) {
                    end_root_seen[r] = true;
                    link_vertices[corner_class[4 * t + v]] += 1;
                }
            }

    // Link orientation: corners inherit the sign of their tetrahedron's labelling.
    std::vector<int> sign(4 * n, 0);
    std::vector<bool> orientable(classes.size(), true);
    for (int start = 0; start < 4 * n; ++start) {
        if (sign[start] != 0) continue;
        sign[start] = 1;
        std::queue<int> queue;
        queue.push(start);
        while (!queue.empty()) {
            const int cur = queue.front();
            queue.pop();
            const int t = cur / 4, v = cur % 4;
            for (int f = 0; f < 4; ++f) {
                if (f == v) continue;
                const FaceGluing& g = *tri.gluing(t, f);
                const int next = 4 * g.target_tet + g.perm[v];
                const int want = -sign[cur] * g.perm.sign();
                if (sign[next] == 0) {
                    sign[next] = want;
                    queue.push(next);
                } else if (sign[next] != want) {
                    orientable[corner_class[cur]] = false;
                }
            }
        }
    }

    for (auto& vc : classes) {
        const int faces = vc.size;
        const int edges = 3 * faces / 2;
        vc.link_euler = link_vertices[vc.id] - edges + faces;
        vc.link_orientable = orientable[vc.id];
        if (vc.link_orientable) {
            vc.link_genus = (2 - vc.link_euler) / 2;
            if (vc.link_euler == 2)
                vc.kind = VertexKind::Internal;
            else if (vc.link_euler == 0)
                vc.kind = VertexKind::Ideal;
            else
                vc.kind = VertexKind::Other;
        } else {
            vc.link_genus = 2 - vc.link_euler;
            vc.kind = VertexKind::Other;
        }
    }
    return classes;
}

Skeleton compute_skeleton(const Triangulation& tri) {
    Skeleton sk;
    sk.edges = compute_edge_classes(tri);
    sk.edge_of.assign(tri.size(), {-1, -1, -1, -1, -1, -1});
    for (const auto& cls : sk.edges)
        for (const auto& inc : cls.incidences) sk.edge_of[inc.tet][inc.edge] = cls.id;

    sk.vertices = compute_vertex_classes(tri);
    const auto ids = corner_classes(tri);
    sk.vertex_of.assign(tri.size(), {-1, -1, -1, -1});
    for (std::size_t i = 0; i < ids.size(); ++i) sk.vertex_of[i / 4][i % 4] = ids[i];
    return sk;
}

std::optional<std::vector<int>> orientation(const Triangulation& tri) {
    require_closed(tri);
    const int n = tri.size();
    std::vector<int> sign(n, 0);
    for (int start = 0; start < n; ++start) {
        if (sign[start] != 0) continue;
        sign[start] = 1;
        std::queue<int> queue;
        queue.push(start);
        while (!queue.empty()) {
            const int t = queue.front();
            queue.pop();
            for (int f = 0; f < 4; ++f) {
                const FaceGluing& g = *tri.gluing(t, f);
                // Coherent orientations glue through odd permutations.
                const int want = -sign[t] * g.perm.sign();
                if (sign[g.target_tet] == 0) {
                    sign[g.target_tet] = want;
                    queue.push(g.target_tet);
                } else if (sign[g.target_tet] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return sign;
}

bool connected(const Triangulation& tri) {
    const int n = tri.size();
    if (n == 0) return false;
    std::vector<bool> seen(n, false);
    std::queue<int> queue;
    queue.push(0);
    seen[0] = true;
    int count = 1;
    while (!queue.empty()) {
        const int t = queue.front();
        queue.pop();
        for (const auto& g : tri.tets[t].gluings) {
            if (!g || seen[g->target_tet]) continue;
            seen[g->target_tet] = true;
            ++count;
            queue.push(g->target_tet);
        }
    }
    return count == n;
}

ValidationReport validate_ideal(const Triangulation& tri) {
    ValidationReport rep;
    rep.tetrahedra = tri.size();
    try {
        check_gluings(tri);
    } catch (const InvalidTriangulation& e) {
        rep.issues.emplace_back(e.what());
        return rep;
    }
    rep.connected = connected(tri);
    if (!rep.connected) rep.issues.emplace_back("not connected");
    rep.closed = tri.closed();
    if (!rep.closed) {
        rep.issues.emplace_back("not closed: unglued faces present");
        return rep;
    }
    rep.orientable = orientation(tri).has_value();
    if (!rep.orientable) rep.issues.emplace_back("not orientable");

    const auto edges = compute_edge_classes(tri);
    rep.edge_classes = static_cast<int>(edges.size());
    for (const auto& e : edges)
        if (e.degree() <= 2) ++rep.low_degree_edges;
    if (rep.low_degree_edges > 0) {
        bool deg1 = false;
        for (const auto& e : edges) deg1 = deg1 || e.degree() == 1;
        rep.issues.emplace_back(deg1 ? "degree-1 edge present" : "degree-2 edge present");
    }

    const auto vertices = compute_vertex_classes(tri);
    rep.vertex_classes = static_cast<int>(vertices.size());
    for (const auto& v : vertices) {
        switch (v.kind) {
            case VertexKind::Internal: ++rep.internal_vertices; break;
            case VertexKind::Ideal: ++rep.ideal_vertices; break;
            case VertexKind::Other: ++rep.other_vertices; break;
        }
    }
    rep.cusps = rep.ideal_vertices;
    if (rep.internal_vertices > 0) rep.issues.emplace_back("internal (sphere-link) vertex present");
    if (rep.other_vertices > 0) rep.issues.emplace_back("vertex link is neither a sphere nor a torus");
    if (rep.vertex_classes != 1) rep.issues.emplace_back("more than one vertex class");
    return rep;
}

}  // namespace chs
