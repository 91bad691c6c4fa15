#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <numbers>

#include "chs/angle_structure.hpp"
#include "chs/simplex.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace chs;
using chs::testing::fixture;
using std::numbers::pi;

namespace {

std::vector<Triangulation> census() {
    std::vector<Triangulation> out;
    for (const auto& entry : std::filesystem::directory_iterator(chs::testing::data_path("census")))
        out.push_back(load_triangulation(entry.path()));
    return out;
}

}  // namespace

TEST_CASE("simplex on a small textbook problem") {
    // maximize 3x + 2y st x + y + s1 = 4, x + 3y + s2 = 6
    Eigen::MatrixXd A(2, 4);
    A << 1, 1, 1, 0, 1, 3, 0, 1;
    Eigen::VectorXd b(2), c(4);
    b << 4, 6;
    c << 3, 2, 0, 0;
    const auto res = solve_lp(A, b, c);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(12));
    CHECK(res.x(0) == doctest::Approx(4));

    Eigen::MatrixXd infeasible(1, 2);
    infeasible << 1, 1;
    Eigen::VectorXd rhs(1), obj(2);
    rhs << -1;
    obj << 1, 0;
    CHECK(solve_lp(infeasible, rhs, obj).status == LpStatus::Infeasible);

    Eigen::MatrixXd open(1, 2);
    open << 1, -1;
    rhs << 0;
    CHECK(solve_lp(open, rhs, obj).status == LpStatus::Unbounded);
}

TEST_CASE("fig8 constraints") {
    const auto cs = build_constraints(fixture("fig8"));
    CHECK(cs.eq_matrix.rows() == 4);
    CHECK(cs.eq_matrix.cols() == 6);
    CHECK(cs.eq_matrix.bottomRows(cs.edges).sum() == doctest::Approx(6 * 2));
    CHECK(cs.cusps == 1);
    const AngleAssignment regular = AngleAssignment::Constant(6, pi / 3);
    CHECK((cs.eq_matrix * regular - cs.eq_rhs).norm() < 1e-14);
}

TEST_CASE("deg2 has a two-term edge row") {
    const auto cs = build_constraints(fixture("deg2"));
    bool found = false;
    for (int r = cs.tets; r < cs.eq_matrix.rows(); ++r)
        if (cs.eq_matrix.row(r).sum() == 2.0) {
            found = true;
            CHECK(cs.eq_matrix.row(r).maxCoeff() == 1.0);
            CHECK(cs.eq_rhs(r) == doctest::Approx(2 * pi));
        }
    CHECK(found);
}

TEST_CASE("interior points") {
    const auto fig8 = find_interior_point(build_constraints(fixture("fig8")));
    REQUIRE(fig8);
    CHECK(fig8->margin >= pi / 3 - 1e-9);

    CHECK_FALSE(find_interior_point(build_constraints(fixture("deg2"))));
    CHECK_FALSE(find_interior_point(build_constraints(fixture("tref"))));
}

TEST_CASE("lp feasibility agrees with vertex enumeration") {
    std::vector<Triangulation> all = census();
    all.push_back(fixture("fig8"));
    all.push_back(fixture("tref"));
    all.push_back(fixture("deg2"));
    for (const auto& tri : all) {
        CAPTURE(tri.name);
        const auto cs = build_constraints(tri);
        const auto point = find_interior_point(cs);
        CHECK(point.has_value() == testing::strictly_feasible_oracle(cs.eq_matrix, cs.eq_rhs));
        if (!point) continue;
        const auto report = check_structure(cs, point->angles);
        CHECK(report.max_tet_violation < 1e-9);
        CHECK(report.max_edge_violation < 1e-9);
        CHECK(report.min_angle > kInteriorTol);
    }
}

TEST_CASE("feasibility is relabeling invariant") {
    std::mt19937_64 rng(9);
    for (const char* name : {"fig8", "tref", "deg2", "m003"}) {
        const bool base = find_interior_point(build_constraints(fixture(name))).has_value();
        for (int k = 0; k < 20; ++k)
            CHECK(find_interior_point(build_constraints(testing::shuffled(fixture(name), rng))).has_value() ==
                  base);
    }
}

TEST_CASE("tangent basis") {
    std::vector<Triangulation> all = census();
    all.push_back(fixture("fig8"));
    for (const auto& tri : all) {
        const auto cs = build_constraints(tri);
        const auto basis = tangent_basis(cs);
        CHECK(basis.dimension() == tri.size() + 1);
        CHECK(basis.dimension_matches());
        CHECK((cs.eq_matrix * basis.columns).cwiseAbs().maxCoeff() < 1e-12);
        const Eigen::MatrixXd gram = basis.columns.transpose() * basis.columns;
        CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).norm() < 1e-12);
        for (int j = 0; j < basis.dimension(); ++j)
            for (int t = 0; t < tri.size(); ++t)
                CHECK(std::abs(basis.columns.col(j).segment<3>(3 * t).sum()) < 1e-12);
    }
    CHECK(tangent_basis(build_constraints(fixture("fig8"))).dimension() == 3);
}

TEST_CASE("check_structure") {
    const auto cs = build_constraints(fixture("fig8"));
    AngleAssignment a = AngleAssignment::Constant(6, pi / 3);
    auto r = check_structure(cs, a);
    CHECK(r.max_tet_violation < 1e-15);
    CHECK(r.max_edge_violation < 1e-15);
    CHECK(r.min_angle == doctest::Approx(pi / 3));

    a(0) += 1e-3;
    r = check_structure(cs, a);
    CHECK(r.max_tet_violation == doctest::Approx(1e-3).epsilon(1e-9));

    // A vertex of the closed polytope with a zero angle.
    AngleAssignment closure;
    for (const auto& v : testing::polytope_vertices(cs.eq_matrix, cs.eq_rhs))
        if (v.minCoeff() < 1e-12) closure = v;
    REQUIRE(closure.size() == 6);
    r = check_structure(cs, closure);
    CHECK(r.min_angle == 0.0);
    CHECK(r.max_tet_violation < 1e-15);
    CHECK(r.max_edge_violation < 1e-12);
}
