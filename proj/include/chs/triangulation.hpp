#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chs/perm.hpp"

namespace chs {

/// Face f of a tetrahedron is the face opposite vertex f. The permutation maps
/// vertex labels of the source tetrahedron to those of the target.
struct FaceGluing {
    int target_tet = -1;
    Perm4 perm;

    friend bool operator==(const FaceGluing&, const FaceGluing&) = default;
};

struct Tetrahedron {
    std::array<std::optional<FaceGluing>, 4> gluings;

    friend bool operator==(const Tetrahedron&, const Tetrahedron&) = default;
};

class InvalidTriangulation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A generalized triangulation: n abstract tetrahedra with faces glued in pairs.
/// Value type; moves produce new instances.
struct Triangulation {
    std::string name;
    std::vector<Tetrahedron> tets;

    int size() const { return static_cast<int>(tets.size()); }

    const std::optional<FaceGluing>& gluing(int tet, int face) const {
        return tets[tet].gluings[face];
    }

    /// Glues (tet, face) to (target, perm[face]) and records the inverse gluing.
    void glue(int tet, int face, int target, Perm4 perm);

    bool closed() const;

    friend bool operator==(const Triangulation& a, const Triangulation& b) {
        return a.tets == b.tets;
    }
};

/// Throws InvalidTriangulation if a gluing is out of range, folds a face onto
/// itself, or is not matched by the inverse gluing on the other side.
void check_gluings(const Triangulation& tri);

/// One tetrahedron edge seen while walking around an edge class. The walk leaves
/// the tetrahedron through the face opposite `exit_face` (which contains a and b).
struct EdgeIncidence {
    int tet = 0;
    int edge = 0;  // 0..5, see kEdgeVertices
    int pair = 0;  // angle pair 0..2
    int a = 0, b = 0;
    int exit_face = 0;
    int entry_face = 0;
    bool orientation = true;
};

struct EdgeClass {
    int id = 0;
    std::vector<EdgeIncidence> incidences;  // cyclic order around the edge

    int degree() const { return static_cast<int>(incidences.size()); }
};

enum class VertexKind { Internal, Ideal, Other };

struct VertexClass {
    int id = 0;
    int link_euler = 0;
    int link_genus = 0;
    bool link_orientable = true;
    VertexKind kind = VertexKind::Other;
    int size = 0;  // number of (tet, vertex) corners
};

/// Edge and vertex classes with lookup tables from tetrahedron corners.
struct Skeleton {
    std::vector<EdgeClass> edges;
    std::vector<std::array<int, 6>> edge_of;  // [tet][edge number] -> class id
    std::vector<VertexClass> vertices;
    std::vector<std::array<int, 4>> vertex_of;  // [tet][vertex] -> class id

    int edge_class(int tet, int a, int b) const { return edge_of[tet][edge_number(a, b)]; }
};

std::vector<EdgeClass> compute_edge_classes(const Triangulation& tri);
std::vector<VertexClass> compute_vertex_classes(const Triangulation& tri);
Skeleton compute_skeleton(const Triangulation& tri);

/// Orientation signs per tetrahedron such that every gluing joins coherently
/// oriented tetrahedra, or nullopt if none exists. Requires a closed table.
std::optional<std::vector<int>> orientation(const Triangulation& tri);

bool connected(const Triangulation& tri);

struct ValidationReport {
    bool closed = false;
    bool orientable = false;
    bool connected = false;
    int tetrahedra = 0;
    int edge_classes = 0;
    int vertex_classes = 0;
    int internal_vertices = 0;
    int ideal_vertices = 0;
    int other_vertices = 0;
    int low_degree_edges = 0;  // degree <= 2
    int cusps = 0;
    std::vector<std::string> issues;

    /// Closed, connected, orientable, exactly one ideal vertex and nothing else.
    bool one_vertex_ideal() const {
        return closed && connected && orientable && vertex_classes == 1 && ideal_vertices == 1;
    }
};

ValidationReport validate_ideal(const Triangulation& tri);

}  // namespace chs
