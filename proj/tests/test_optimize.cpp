#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <map>
#include <numbers>

#include "chs/angle_structure.hpp"
#include "chs/optimize.hpp"
#include "chs/pipeline.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace chs;
using chs::testing::fixture;
using std::numbers::pi;

namespace {

MaximizeOutcome solve(const Triangulation& tri, const MaximizeOptions& opts = {}) {
    const auto cs = build_constraints(tri);
    const auto start = find_interior_point(cs);
    REQUIRE(start);
    return maximize(tri, start->angles, tangent_basis(cs), opts);
}

bool non_decreasing(const std::vector<double>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i)
        if (trace[i] < trace[i - 1] - 1e-12) return false;
    return true;
}

// Hyperbolic volumes of the census bases (SnapPy, all shapes positively oriented).
const std::map<std::string, double> kCensusVolumes = {
    {"m003", 2.029883212819}, {"m004", 2.029883212819}, {"m006", 2.568970600937},
    {"m007", 2.568970600937}, {"m009", 2.666744783449}, {"m010", 2.666744783449},
    {"m011", 2.781833912396}, {"m015", 2.828122088331}, {"m016", 2.828122088331},
    {"m017", 2.828122088331}, {"m019", 2.944106486677}, {"m022", 2.989120282929},
    {"m023", 2.989120282929}, {"m026", 3.059338057779}, {"m029", 3.148509826441},
    {"m030", 3.148509826441}, {"m032", 3.163963228883}, {"m033", 3.163963228883},
    {"m034", 3.166333321250}, {"m035", 3.177293278600}};

}  // namespace

TEST_CASE("classify_flat") {
    AngleAssignment a(3);
    a << 1e-9, 1e-9, pi - 2e-9;
    auto c = classify_flat(a, 1e-6);
    REQUIRE(c.flat.size() == 1);
    CHECK(c.flat[0] == FlatTet{0, 2});
    CHECK(c.anomalies.empty());

    a << 1e-9, 1.0, pi - 1.0 - 1e-9;
    c = classify_flat(a, 1e-6);
    CHECK(c.flat.empty());
    CHECK(c.anomalies == std::vector<int>{0});

    a = AngleAssignment::Constant(6, pi / 3);
    c = classify_flat(a, 1e-6);
    CHECK(c.flat.empty());
    CHECK(c.anomalies.empty());
}

TEST_CASE("fig8 reaches the regular structure") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto out = solve(fixture("fig8"));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(out.kind == OutcomeKind::InteriorCHS);
    CHECK((out.angles.array() - pi / 3).abs().maxCoeff() < 1e-9);
    CHECK(std::abs(out.volume - 6 * testing::lobachevsky_quadrature(pi / 3)) < 1e-9);
    CHECK(out.gradient_norm < 1e-10);
    CHECK(seconds < 1.0);
    CHECK(non_decreasing(out.volume_trace));
}

TEST_CASE("iteration cap forces Stalled") {
    const Triangulation tri = fixture("fig8");
    const auto cs = build_constraints(tri);
    const auto basis = tangent_basis(cs);
    AngleAssignment far(6);
    // A valid but lopsided structure: move along a tangent direction towards the boundary.
    far = AngleAssignment::Constant(6, pi / 3) + basis.columns.col(0) * 0.9 *
          (pi / 3) / basis.columns.col(0).cwiseAbs().maxCoeff();
    REQUIRE(far.minCoeff() > 0);
    MaximizeOptions opts;
    opts.max_iter = 1;
    const auto out = maximize(tri, far, basis, opts);
    CHECK(out.kind == OutcomeKind::Stalled);
    CHECK(out.iterations == 1);
    CHECK(out.volume_trace.back() >= out.volume_trace.front());
}

TEST_CASE("invalid start is rejected") {
    const Triangulation tri = fixture("fig8");
    const auto basis = tangent_basis(build_constraints(tri));
    AngleAssignment bad = AngleAssignment::Constant(6, pi / 3);
    bad(0) = 0;
    CHECK_THROWS_AS(maximize(tri, bad, basis), std::invalid_argument);
}

TEST_CASE("census bases are geometric") {
    for (const auto& [name, vol] : kCensusVolumes) {
        CAPTURE(name);
        const auto out = solve(load_triangulation(testing::data_path("census/" + name + ".json")));
        CHECK(out.kind == OutcomeKind::InteriorCHS);
        CHECK(std::abs(out.volume - vol) < 1e-9);
        CHECK(non_decreasing(out.volume_trace));
    }
}

TEST_CASE("suite runs stop at a boundary critical point inside the closed polytope") {
    for (const auto& f : read_manifest(testing::data_path("suite/manifest.json"))) {
        CAPTURE(f.name);
        const auto out = solve(load_triangulation(f.path));
        CHECK(out.kind == OutcomeKind::Boundary);
        CHECK(out.iterations < MaximizeOptions{}.max_iter / 2);
        CHECK(std::isfinite(out.gradient_norm));
        CHECK(out.angles.minCoeff() > 0);
        CHECK(out.angles.maxCoeff() < pi);
        CHECK(non_decreasing(out.volume_trace));
    }
}
