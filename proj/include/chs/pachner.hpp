#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chs/triangulation.hpp"

namespace chs {

class MoveBlocked : public std::runtime_error {
public:
    enum class Reason { Combinatorial, Degree, Geometric };

    MoveBlocked(Reason reason, const std::string& what)
        : std::runtime_error(what), reason_(reason) {}

    Reason reason() const { return reason_; }

private:
    Reason reason_;
};

/// Vertex names of the five-vertex bipyramid used by 2-3 and 3-2 moves:
/// old/new tetrahedra are ABCD, BCDE (two) and ABCE, ACDE, ADBE (three).
enum VertexName : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E' };

using NamedTet = std::array<char, 4>;  // name of each vertex label 0..3

inline int position_of(const NamedTet& names, char v) {
    for (int i = 0; i < 4; ++i)
        if (names[i] == v) return i;
    return -1;
}

/// Everything a caller needs to carry data across a local move.
struct MoveFrame {
    Triangulation tri;
    std::vector<int> old_to_new;       // -1 for removed tetrahedra
    std::vector<int> removed;          // old indices, in configuration order
    std::vector<NamedTet> removed_names;
    std::vector<int> created;          // new indices, in configuration order
    std::vector<NamedTet> created_names;
};

/// Tetrahedra t1 = (tet) and t2 sharing face `face` of `tet`, with bipyramid names.
struct FaceConfiguration {
    int t1 = -1, t2 = -1;
    NamedTet names1{}, names2{};
};

/// Three tetrahedra around a degree-3 edge, named t3 = ABCE, t4 = ACDE, t5 = ADBE.
struct EdgeConfiguration {
    std::array<int, 3> tets{};
    std::array<NamedTet, 3> names{};
};

FaceConfiguration face_configuration(const Triangulation& tri, int tet, int face);

/// Throws MoveBlocked if the edge does not have degree 3 with distinct tetrahedra.
EdgeConfiguration edge_configuration(const Triangulation& tri, const EdgeClass& edge);

MoveFrame pachner_2_3_frame(const Triangulation& tri, int tet, int face);
MoveFrame pachner_3_2_frame(const Triangulation& tri, const EdgeClass& edge);

Triangulation pachner_2_3(const Triangulation& tri, int tet, int face);
Triangulation pachner_3_2(const Triangulation& tri, int edge);

/// Removes two tetrahedra around a degree-2 edge by flattening them onto each other.
/// Throws MoveBlocked unless the tetrahedra are distinct, the edges opposite the
/// degree-2 edge are distinct, and the four outer faces lead outside the pair.
MoveFrame pachner_2_0_frame(const Triangulation& tri, const EdgeClass& edge);

/// Edge given by a representative (tet, a, b); survives moves via track_edge.
struct EdgeRef {
    int tet = -1;
    int a = 0, b = 1;
};

/// Representative of the same edge after a move, or nullopt if the move deleted it.
std::optional<EdgeRef> track_edge(const MoveFrame& frame, const EdgeRef& ref);

}  // namespace chs
