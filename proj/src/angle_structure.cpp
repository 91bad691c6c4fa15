#include "chs/angle_structure.hpp"

#include <numbers>
#include <stdexcept>

#include "chs/simplex.hpp"

namespace chs {

using std::numbers::pi;

ConstraintSystem build_constraints(const Triangulation& tri) {
    const int n = tri.size();
    const auto edges = compute_edge_classes(tri);
    int cusps = 0;
    for (const auto& v : compute_vertex_classes(tri))
        if (v.kind == VertexKind::Ideal) ++cusps;

    ConstraintSystem cs;
    cs.tets = n;
    cs.edges = static_cast<int>(edges.size());
    cs.cusps = cusps;
    cs.eq_matrix = Eigen::MatrixXd::Zero(n + cs.edges, 3 * n);
    cs.eq_rhs.resize(n + cs.edges);
    for (int t = 0; t < n; ++t) {
        cs.eq_matrix.block(t, 3 * t, 1, 3).setOnes();
        cs.eq_rhs(t) = pi;
    }
    for (const auto& e : edges) {
        for (const auto& inc : e.incidences) cs.eq_matrix(n + e.id, angle_index(inc.tet, inc.pair)) += 1.0;
        cs.eq_rhs(n + e.id) = 2 * pi;
    }
    return cs;
}

std::optional<InteriorPoint> find_interior_point(const ConstraintSystem& cs) {
    // x = y + s with y >= 0 and s = s_plus - s_minus.
    const int v = cs.variables();
    const Eigen::MatrixXd& A = cs.eq_matrix;
    Eigen::MatrixXd lp(A.rows(), v + 2);
    lp.leftCols(v) = A;
    lp.col(v) = A.rowwise().sum();
    lp.col(v + 1) = -lp.col(v);
    Eigen::VectorXd objective = Eigen::VectorXd::Zero(v + 2);
    objective(v) = 1.0;
    objective(v + 1) = -1.0;

    const LpResult res = solve_lp(lp, cs.eq_rhs, objective);
    if (res.status == LpStatus::Unbounded) throw LpFailure("angle LP reported an unbounded margin");
    if (res.status == LpStatus::Infeasible || res.objective <= kInteriorTol) return std::nullopt;

    AngleAssignment x = res.x.head(v).array() + res.objective;
    // Remove the simplex's rounding from the equalities.
    x -= A.completeOrthogonalDecomposition().solve(A * x - cs.eq_rhs);
    const double margin = x.minCoeff();
    if (margin <= kInteriorTol) return std::nullopt;
    return InteriorPoint{x, margin};
}

TangentBasis tangent_basis(const ConstraintSystem& cs) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cs.eq_matrix, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-9 * std::max(1.0, sv.size() ? sv(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;

    TangentBasis basis;
    basis.rank = rank;
    basis.expected_dimension = cs.tets + cs.cusps;
    basis.columns = svd.matrixV().rightCols(cs.variables() - rank);
    return basis;
}

StructureReport check_structure(const ConstraintSystem& cs, const AngleAssignment& angles) {
    if (angles.size() != cs.variables())
        throw std::invalid_argument("angle assignment does not match the triangulation");
    const Eigen::VectorXd residual = cs.eq_matrix * angles - cs.eq_rhs;
    StructureReport r;
    r.max_tet_violation = residual.head(cs.tets).cwiseAbs().maxCoeff();
    r.max_edge_violation = cs.edges ? residual.tail(cs.edges).cwiseAbs().maxCoeff() : 0.0;
    r.min_angle = angles.minCoeff();
    r.max_angle = angles.maxCoeff();
    return r;
}

StructureReport check_structure(const Triangulation& tri, const AngleAssignment& angles) {
    return check_structure(build_constraints(tri), angles);
}

}  // namespace chs
