#include "chs/pachner.hpp"

#include <algorithm>
#include <cmath>

namespace chs {

namespace {

struct Point3 {
    double x, y, z;
};

// A fixed embedding of the bipyramid; the sign of a named tetrahedron's
// determinant tells which labelling order is positively oriented.
Point3 embed(char name) {
    const double s = std::sqrt(3.0) / 2.0;
    switch (name) {
        case 'A': return {0.0, 0.0, 1.0};
        case 'B': return {1.0, 0.0, 0.0};
        case 'C': return {-0.5, s, 0.0};
        case 'D': return {-0.5, -s, 0.0};
        default: return {0.0, 0.0, -1.0};
    }
}

int orientation_sign(const NamedTet& names) {
    const Point3 p0 = embed(names[0]), p1 = embed(names[1]), p2 = embed(names[2]),
                 p3 = embed(names[3]);
    const double u[3] = {p1.x - p0.x, p1.y - p0.y, p1.z - p0.z};
    const double v[3] = {p2.x - p0.x, p2.y - p0.y, p2.z - p0.z};
    const double w[3] = {p3.x - p0.x, p3.y - p0.y, p3.z - p0.z};
    const double det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
                       u[2] * (v[0] * w[1] - v[1] * w[0]);
    return det > 0 ? 1 : -1;
}

bool contains_all(const NamedTet& tet, const std::array<char, 3>& face) {
    for (char c : face)
        if (position_of(tet, c) < 0) return false;
    return true;
}

std::array<char, 3> face_names(const NamedTet& tet, int face) {
    std::array<char, 3> out{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (i != face) out[k++] = tet[i];
    return out;
}

int face_opposite(const NamedTet& tet, const std::array<char, 3>& face) {
    for (int i = 0; i < 4; ++i)
        if (std::find(face.begin(), face.end(), tet[i]) == face.end()) return i;
    return -1;
}

// Replaces the configuration tetrahedra by new ones described through vertex names.
// Faces shared by two new tetrahedra are glued by name; every other face of a new
// tetrahedron inherits the outer gluing of the unique old face with the same names.
MoveFrame replace(const Triangulation& tri, const std::vector<int>& old_tets,
                  const std::vector<NamedTet>& old_names, std::vector<NamedTet> new_names) {
    const int reference = orientation_sign(old_names[0]);
    for (auto& names : new_names)
        if (orientation_sign(names) != reference) std::swap(names[2], names[3]);

    const int n = tri.size();
    const int k_old = static_cast<int>(old_tets.size());
    const int k_new = static_cast<int>(new_names.size());

    std::vector<int> slots = old_tets;
    std::sort(slots.begin(), slots.end());
    std::vector<int> config_index(n, -1);
    for (int i = 0; i < k_old; ++i) config_index[old_tets[i]] = i;

    MoveFrame frame;
    frame.old_to_new.assign(n, -1);
    frame.removed = old_tets;
    frame.removed_names = old_names;
    frame.created.assign(k_new, -1);
    frame.created_names = new_names;

    // Final order: untouched tetrahedra keep their relative order; new tetrahedra
    // take the configuration's slots in sorted order, extra ones are appended.
    int next = 0;
    for (int t = 0; t < n; ++t) {
        if (config_index[t] < 0) {
            frame.old_to_new[t] = next++;
            continue;
        }
        const int slot_rank =
            static_cast<int>(std::lower_bound(slots.begin(), slots.end(), t) - slots.begin());
        if (slot_rank < k_new) frame.created[slot_rank] = next++;
    }
    for (int k = k_old; k < k_new; ++k) frame.created[k] = next++;

    Triangulation out;
    out.name = tri.name;
    out.tets.resize(next);
    for (int t = 0; t < n; ++t) {
        if (frame.old_to_new[t] < 0) continue;
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g || config_index[g->target_tet] >= 0) continue;
            out.tets[frame.old_to_new[t]].gluings[f] =
                FaceGluing{frame.old_to_new[g->target_tet], g->perm};
        }
    }

    for (int k = 0; k < k_new; ++k) {
        const NamedTet& names = new_names[k];
        for (int i = 0; i < 4; ++i) {
            const auto fn = face_names(names, i);
            int partner = -1;
            for (int k2 = 0; k2 < k_new; ++k2)
                if (k2 != k && contains_all(new_names[k2], fn)) partner = k2;

            if (partner >= 0) {
                const NamedTet& other = new_names[partner];
                std::array<int, 4> img{};
                for (int x = 0; x < 4; ++x)
                    img[x] = x == i ? face_opposite(other, fn) : position_of(other, names[x]);
                out.tets[frame.created[k]].gluings[i] =
                    FaceGluing{frame.created[partner], Perm4(img)};
                continue;
            }

            int owner = -1;
            for (int o = 0; o < k_old; ++o)
                if (contains_all(old_names[o], fn)) owner = o;
            if (owner < 0) throw std::logic_error("move configuration has an unmatched face");
            const NamedTet& on = old_names[owner];
            const int old_face = face_opposite(on, fn);
            const auto& g = tri.gluing(old_tets[owner], old_face);
            if (!g) continue;  // boundary face stays boundary
            const Perm4& q = g->perm;

            std::array<int, 4> img{};
            int target = -1;
            const int u_config = config_index[g->target_tet];
            if (u_config < 0) {
                target = frame.old_to_new[g->target_tet];
                for (int x = 0; x < 4; ++x)
                    img[x] = x == i ? q[old_face] : q[position_of(on, names[x])];
            } else {
                const NamedTet& un = old_names[u_config];
                const auto target_fn = face_names(un, q[old_face]);
                int k2 = -1;
                for (int j = 0; j < k_new; ++j)
                    if (contains_all(new_names[j], target_fn)) k2 = j;
                if (k2 < 0) throw std::logic_error("move configuration has an unmatched face");
                target = frame.created[k2];
                for (int x = 0; x < 4; ++x)
                    img[x] = x == i ? face_opposite(new_names[k2], target_fn)
                                    : position_of(new_names[k2], un[q[position_of(on, names[x])]]);
            }
            out.glue(frame.created[k], i, target, Perm4(img));
        }
    }
    frame.tri = std::move(out);
    return frame;
}

}  // namespace

FaceConfiguration face_configuration(const Triangulation& tri, int tet, int face) {
    if (tet < 0 || tet >= tri.size() || face < 0 || face > 3)
        throw std::out_of_range("no such face");
    const auto& g = tri.gluing(tet, face);
    if (!g) throw MoveBlocked(MoveBlocked::Reason::Combinatorial, "face is on the boundary");
    if (g->target_tet == tet)
        throw MoveBlocked(MoveBlocked::Reason::Combinatorial,
                          "the two tetrahedra sharing the face must be distinct");
    FaceConfiguration cfg;
    cfg.t1 = tet;
    cfg.t2 = g->target_tet;
    const char others[3] = {'B', 'C', 'D'};
    int k = 0;
    for (int v = 0; v < 4; ++v) cfg.names1[v] = v == face ? 'A' : others[k++];
    for (int v = 0; v < 4; ++v) cfg.names2[g->perm[v]] = v == face ? 'E' : cfg.names1[v];
    return cfg;
}

EdgeConfiguration edge_configuration(const Triangulation& tri, const EdgeClass& edge) {
    if (edge.degree() != 3)
        throw MoveBlocked(MoveBlocked::Reason::Degree, "3-2 move needs an edge of degree 3");
    EdgeConfiguration cfg;
    // Entry/exit names for consecutive tetrahedra t3, t4, t5 around AE.
    const char entry[3] = {'C', 'D', 'B'};
    const char exit[3] = {'B', 'C', 'D'};
    for (int i = 0; i < 3; ++i) {
        const auto& inc = edge.incidences[i];
        cfg.tets[i] = inc.tet;
        auto& nm = cfg.names[i];
        nm[inc.a] = 'A';
        nm[inc.b] = 'E';
        nm[inc.entry_face] = entry[i];
        nm[inc.exit_face] = exit[i];
    }
    if (cfg.tets[0] == cfg.tets[1] || cfg.tets[1] == cfg.tets[2] || cfg.tets[0] == cfg.tets[2])
        throw MoveBlocked(MoveBlocked::Reason::Combinatorial,
                          "the three tetrahedra around the edge must be distinct");
    (void)tri;
    return cfg;
}

MoveFrame pachner_2_3_frame(const Triangulation& tri, int tet, int face) {
    const FaceConfiguration cfg = face_configuration(tri, tet, face);
    return replace(tri, {cfg.t1, cfg.t2}, {cfg.names1, cfg.names2},
                   {NamedTet{'A', 'B', 'C', 'E'}, NamedTet{'A', 'C', 'D', 'E'},
                    NamedTet{'A', 'D', 'B', 'E'}});
}

MoveFrame pachner_3_2_frame(const Triangulation& tri, const EdgeClass& edge) {
    const EdgeConfiguration cfg = edge_configuration(tri, edge);
    return replace(tri, {cfg.tets[0], cfg.tets[1], cfg.tets[2]},
                   {cfg.names[0], cfg.names[1], cfg.names[2]},
                   {NamedTet{'A', 'B', 'C', 'D'}, NamedTet{'B', 'C', 'D', 'E'}});
}

Triangulation pachner_2_3(const Triangulation& tri, int tet, int face) {
    return pachner_2_3_frame(tri, tet, face).tri;
}

Triangulation pachner_3_2(const Triangulation& tri, int edge) {
    const auto edges = compute_edge_classes(tri);
    if (edge < 0 || edge >= static_cast<int>(edges.size()))
        throw std::out_of_range("no such edge class");
    return pachner_3_2_frame(tri, edges[edge]).tri;
}

MoveFrame pachner_2_0_frame(const Triangulation& tri, const EdgeClass& edge) {
    if (edge.degree() != 2)
        throw MoveBlocked(MoveBlocked::Reason::Degree, "2-0 move needs an edge of degree 2");
    const auto& inc = edge.incidences[0];
    const int x = inc.tet;
    const int y = edge.incidences[1].tet;
    if (x == y)
        throw MoveBlocked(MoveBlocked::Reason::Combinatorial,
                          "the two tetrahedra around the edge must be distinct");
    const int a = inc.a, b = inc.b, c = inc.entry_face, d = inc.exit_face;
    const FaceGluing& gd = *tri.gluing(x, d);
    const FaceGluing& gc = *tri.gluing(x, c);
    if (gd.target_tet != y || gc.target_tet != y)
        throw MoveBlocked(MoveBlocked::Reason::Combinatorial, "degree-2 edge is not a pillow");
    std::array<int, 4> phi_img{};
    phi_img[a] = gd.perm[a];
    phi_img[b] = gd.perm[b];
    phi_img[c] = gd.perm[c];
    phi_img[d] = gc.perm[d];
    const Perm4 phi(phi_img);

    const auto edges = compute_edge_classes(tri);
    int cd_x = -1, cd_y = -1;
    for (const auto& cls : edges)
        for (const auto& e : cls.incidences) {
            if (e.tet == x && e.edge == edge_number(c, d)) cd_x = cls.id;
            if (e.tet == y && e.edge == edge_number(phi[c], phi[d])) cd_y = cls.id;
        }
    if (cd_x == cd_y)
        throw MoveBlocked(MoveBlocked::Reason::Combinatorial,
                          "edges opposite the degree-2 edge coincide");

    struct Outer {
        FaceGluing from_x, from_y;
    };
    Outer outer[2];
    const int sides[2] = {a, b};
    for (int s = 0; s < 2; ++s) {
        const FaceGluing gx = *tri.gluing(x, sides[s]);
        const FaceGluing gy = *tri.gluing(y, phi[sides[s]]);
        if (gx.target_tet == x || gx.target_tet == y || gy.target_tet == x || gy.target_tet == y)
            throw MoveBlocked(MoveBlocked::Reason::Combinatorial,
                              "outer faces of the pillow are glued to the pillow");
        outer[s] = {gx, gy};
    }

    const int n = tri.size();
    MoveFrame frame;
    frame.old_to_new.assign(n, -1);
    frame.removed = {x, y};
    int next = 0;
    for (int t = 0; t < n; ++t)
        if (t != x && t != y) frame.old_to_new[t] = next++;

    Triangulation out;
    out.name = tri.name;
    out.tets.resize(next);
    for (int t = 0; t < n; ++t) {
        if (t == x || t == y) continue;
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g || g->target_tet == x || g->target_tet == y) continue;
            out.tets[frame.old_to_new[t]].gluings[f] =
                FaceGluing{frame.old_to_new[g->target_tet], g->perm};
        }
    }
    for (int s = 0; s < 2; ++s) {
        const FaceGluing& gx = outer[s].from_x;
        const FaceGluing& gy = outer[s].from_y;
        const int u = gx.target_tet;
        const int u_face = gx.perm[sides[s]];
        // u --(gx^-1)--> x --(phi)--> y --(gy)--> w
        const Perm4 composite = gy.perm * phi * gx.perm.inverse();
        out.glue(frame.old_to_new[u], u_face, frame.old_to_new[gy.target_tet], composite);
    }
    frame.tri = std::move(out);
    return frame;
}

std::optional<EdgeRef> track_edge(const MoveFrame& frame, const EdgeRef& ref) {
    if (frame.old_to_new[ref.tet] >= 0) return EdgeRef{frame.old_to_new[ref.tet], ref.a, ref.b};
    for (std::size_t i = 0; i < frame.removed.size(); ++i) {
        if (frame.removed[i] != ref.tet || i >= frame.removed_names.size()) continue;
        const char x = frame.removed_names[i][ref.a];
        const char y = frame.removed_names[i][ref.b];
        for (std::size_t k = 0; k < frame.created.size(); ++k) {
            const int px = position_of(frame.created_names[k], x);
            const int py = position_of(frame.created_names[k], y);
            if (px >= 0 && py >= 0) return EdgeRef{frame.created[k], px, py};
        }
    }
    return std::nullopt;
}

}  // namespace chs
