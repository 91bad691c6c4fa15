#pragma once

#include <string>
#include <vector>

#include "chs/angle_structure.hpp"
#include "chs/triangulation.hpp"

namespace chs {

struct FlatTet {
    int tet = 0;
    int pi_pair = 0;

    friend bool operator==(const FlatTet&, const FlatTet&) = default;
};

/// Flat tetrahedra match (0, 0, pi) within eps; anomalies have exactly one angle
/// below eps with the other two inside (eps, pi - eps).
struct FlatClassification {
    std::vector<FlatTet> flat;
    std::vector<int> anomalies;
    std::vector<int> degenerate;  // every tet with an angle below eps
};

FlatClassification classify_flat(const AngleAssignment& angles, double eps);

enum class OutcomeKind { InteriorCHS, Boundary, Stalled };

std::string to_string(OutcomeKind kind);

struct MaximizeOptions {
    double grad_tol = 1e-10;
    double flat_eps = 1e-6;
    int max_iter = 500;
    double boundary_fraction = 0.9;  // fraction of the distance to the boundary per step
};

struct MaximizeOutcome {
    OutcomeKind kind = OutcomeKind::Stalled;
    AngleAssignment angles;
    double volume = 0;
    std::vector<FlatTet> flat_tets;
    int iterations = 0;
    double gradient_norm = 0;
    std::vector<double> volume_trace;  // volume after each accepted iterate, starting at A0
};

/// Reduced Newton ascent of the volume over the polytope from a strictly
/// interior A0. Throws std::invalid_argument if A0 is not interior.
MaximizeOutcome maximize(const Triangulation& tri, const AngleAssignment& start,
                         const TangentBasis& basis, const MaximizeOptions& opts = {});

}  // namespace chs
