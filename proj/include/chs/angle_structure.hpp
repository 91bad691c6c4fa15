#pragma once

#include <optional>

#include <Eigen/Dense>

#include "chs/triangulation.hpp"
#include "chs/volume.hpp"

namespace chs {

inline constexpr double kInteriorTol = 1e-7;  // LP margins below this count as empty
inline constexpr double kEqTol = 1e-9;

/// Linear equalities of the angle-structure polytope: one row per tetrahedron
/// (sum pi) followed by one row per edge class (sum 2 pi). Columns are 3t + pair.
struct ConstraintSystem {
    Eigen::MatrixXd eq_matrix;
    Eigen::VectorXd eq_rhs;
    int tets = 0;
    int edges = 0;
    int cusps = 0;

    int variables() const { return 3 * tets; }
};

ConstraintSystem build_constraints(const Triangulation& tri);

struct InteriorPoint {
    AngleAssignment angles;
    double margin = 0;  // optimal minimum angle
};

/// Maximizes the minimum angle over the polytope. Returns nullopt when the
/// optimum is at most kInteriorTol; throws LpFailure on numerical breakdown.
std::optional<InteriorPoint> find_interior_point(const ConstraintSystem& cs);

/// Orthonormal null-space basis of the constraint matrix.
struct TangentBasis {
    Eigen::MatrixXd columns;
    int rank = 0;
    int expected_dimension = 0;  // tets + cusps

    int dimension() const { return static_cast<int>(columns.cols()); }
    bool dimension_matches() const { return dimension() == expected_dimension; }
};

TangentBasis tangent_basis(const ConstraintSystem& cs);

struct StructureReport {
    double max_tet_violation = 0;
    double max_edge_violation = 0;
    double min_angle = 0;
    double max_angle = 0;

    bool valid(double tol = kEqTol) const {
        return max_tet_violation < tol && max_edge_violation < tol && min_angle >= 0;
    }
};

StructureReport check_structure(const ConstraintSystem& cs, const AngleAssignment& angles);
StructureReport check_structure(const Triangulation& tri, const AngleAssignment& angles);

}  // namespace chs
