#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "chs/geo_moves.hpp"
#include "chs/isosig.hpp"
#include "chs/optimize.hpp"

namespace chs {

struct MoveRecord {
    enum class Kind { Move23, Move32 };

    Kind kind = Kind::Move23;
    int tet = -1, face = -1;  // 2-3 location
    int edge = -1;            // 3-2 location (edge class id at the time of the move)
    bool was_recursive = false;
};

struct SearchOptions {
    int width = 8;
    int exhaustive_depth = 2;
    int recursion_budget = 3;
    int visited_cap = 10000;
    double geo_tol = kGeoTol;
    std::ostream* trace = nullptr;  // JSON lines, one per expanded node
};

/// One state of the search. `watch` holds the target edge of every active
/// recursion level (outermost first) and `guard` the two tetrahedra each level
/// must keep intact for its pending 3-2 move.
struct SearchNode {
    Triangulation tri;
    AngleAssignment angles;
    std::vector<EdgeRef> watch;
    std::vector<std::array<int, 2>> guard;
    int depth = 0;
    std::vector<MoveRecord> moves_taken;
    Signature sig;

    const EdgeRef& target() const { return watch.back(); }
    int target_edge() const;
};

struct SearchStats {
    int nodes_expanded = 0;
    int signatures = 0;
    int deepest_recursion = 0;
    bool cap_reached = false;
};

struct SearchResult {
    bool success = false;
    SearchNode node;  // degree-3 node on success, deepest node reached otherwise
    SearchStats stats;
};

/// Of the two edge classes carrying the pi angle of a flat tetrahedron, the one
/// whose smallest incident dihedral angle is larger; ties go to the lower id.
int select_pi_edge(const Triangulation& tri, const AngleAssignment& angles, const FlatTet& flat);

struct MoveCandidate {
    enum class Kind { Direct, Recursive };

    Kind kind = Kind::Direct;
    int tet = -1, face = -1;  // 2-3 across this face merges two incidences of the edge
    double key = 0;           // ordering key
    std::optional<EdgeRef> blocking;  // recursive: the edge e_f to bring to degree 3
};

/// Direct 2-3 moves first, ascending by the smaller of the two merged angles at
/// the edge; then recursive candidates, best select_pi_edge score first.
/// Faces touching guarded tetrahedra are skipped. Truncated to opts.width once
/// node.depth >= opts.exhaustive_depth.
std::vector<MoveCandidate> order_moves(const SearchNode& node, const SearchOptions& opts,
                                       bool allow_recursive = true);

/// Depth-first search for a sequence of geometric moves bringing the edge
/// node.target() to degree 3 with three distinct tetrahedra.
SearchResult reduce_edge_degree(const SearchNode& node, const SearchOptions& opts);

struct RemovalResult {
    bool success = false;
    Triangulation tri;
    AngleAssignment angles;
    std::vector<MoveRecord> moves;
    SearchStats stats;
    std::string failure;
};

/// Removes a flat tetrahedron: degree reduction on one of its pi-edges (the
/// select_pi_edge choice first, the other as a fallback) and a final 3-2 move.
RemovalResult remove_flat_tet(const Triangulation& tri, const AngleAssignment& angles, const FlatTet& flat,
                              const SearchOptions& opts = {});

struct ReplayResult {
    Triangulation tri;
    AngleAssignment angles;
};

/// Re-applies recorded geometric moves.
ReplayResult replay(const Triangulation& tri, const AngleAssignment& angles,
                    const std::vector<MoveRecord>& moves);

std::string to_json(const MoveRecord& move);

}  // namespace chs
