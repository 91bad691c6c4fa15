#pragma once

#include <optional>

#include "chs/pachner.hpp"
#include "chs/volume.hpp"

namespace chs {

inline constexpr double kGeoTol = 1e-9;  // face-edge sums within this of pi are blocked

struct GeoCheck {
    bool ok = false;
    MoveBlocked::Reason reason = MoveBlocked::Reason::Combinatorial;
    std::optional<EdgeRef> offending;  // geometric case: face edge with the largest sum
    double offending_sum = 0;          // t1(e) + t2(e) on that edge
};

/// Ok iff the two tetrahedra across the face differ and every edge e of the face
/// has t1(e) + t2(e) < pi - tol.
GeoCheck can_2_3_geometric(const Triangulation& tri, const AngleAssignment& angles, int tet, int face,
                           double tol = kGeoTol);

struct GeoMoveResult {
    MoveFrame frame;
    AngleAssignment angles;

    const Triangulation& tri() const { return frame.tri; }
};

/// 2-3 move whose three new tetrahedra get angles from products of the edge
/// parameters of the two old ones; every other tetrahedron keeps its angles.
/// Throws MoveBlocked when can_2_3_geometric is not Ok.
GeoMoveResult apply_2_3_geometric(const Triangulation& tri, const AngleAssignment& angles, int tet,
                                  int face, double tol = kGeoTol);

/// 3-2 move on a degree-3 edge; new angles are sums of the old ones.
GeoMoveResult apply_3_2_geometric(const Triangulation& tri, const AngleAssignment& angles, int edge);

/// Angle of the tetrahedron `tet` (vertex names `names`) on the edge joining names x and y.
inline double& named_angle(AngleAssignment& angles, int tet, const NamedTet& names, char x, char y) {
    return angles(angle_index(tet, angle_pair(position_of(names, x), position_of(names, y))));
}

inline double named_angle(const AngleAssignment& angles, int tet, const NamedTet& names, char x, char y) {
    return angles(angle_index(tet, angle_pair(position_of(names, x), position_of(names, y))));
}

}  // namespace chs
