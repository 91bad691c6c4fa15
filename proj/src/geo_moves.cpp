#include "chs/geo_moves.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>

#include "chs/shape.hpp"

namespace chs {

using std::numbers::pi;

namespace {

AngleAssignment carry_untouched(const MoveFrame& frame, const AngleAssignment& angles) {
    AngleAssignment out = AngleAssignment::Zero(3 * frame.tri.size());
    for (std::size_t old = 0; old < frame.old_to_new.size(); ++old) {
        const int t = frame.old_to_new[old];
        if (t >= 0) out.segment<3>(3 * t) = angles.segment<3>(3 * old);
    }
    return out;
}

// Degenerate inputs (zero angles at closure points): pick the midpoint of the
// feasible interval of the one-parameter solution family, lambda = t3(AB).
void split_by_lambda(GeoMoveResult& res, const std::function<double(char, char)>& old1,
                     const std::function<double(char, char)>& old2) {
    const double phi_bc = old1('B', 'C') + old2('B', 'C');
    const double phi_cd = old1('C', 'D') + old2('C', 'D');
    const double phi_db = old1('D', 'B') + old2('D', 'B');
    // Each unknown is offset + sign * lambda, in the order
    // t3(AB), t3(AC), t4(AC), t4(AD), t5(AD), t5(AB).
    const double c3ac = pi - phi_bc;
    const double c4ac = old1('A', 'C') - c3ac;
    const double c4ad = pi - phi_cd - c4ac;
    const double c5ad = old1('A', 'D') - c4ad;
    const double c5ab = pi - phi_db - c5ad;
    const std::array<double, 6> offset = {0, c3ac, c4ac, c4ad, c5ad, c5ab};
    const std::array<int, 6> sign = {1, -1, 1, -1, 1, -1};
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 6; ++i) {
        if (sign[i] > 0)
            lo = std::max(lo, -offset[i]);
        else
            hi = std::min(hi, offset[i]);
    }
    const double lambda = 0.5 * (lo + hi);
    std::array<double, 6> v{};
    for (int i = 0; i < 6; ++i) v[i] = std::max(0.0, offset[i] + sign[i] * lambda);

    const auto& c = res.frame.created;
    const auto& n = res.frame.created_names;
    named_angle(res.angles, c[0], n[0], 'B', 'C') = phi_bc;
    named_angle(res.angles, c[0], n[0], 'A', 'B') = v[0];
    named_angle(res.angles, c[0], n[0], 'A', 'C') = v[1];
    named_angle(res.angles, c[1], n[1], 'C', 'D') = phi_cd;
    named_angle(res.angles, c[1], n[1], 'A', 'C') = v[2];
    named_angle(res.angles, c[1], n[1], 'A', 'D') = v[3];
    named_angle(res.angles, c[2], n[2], 'D', 'B') = phi_db;
    named_angle(res.angles, c[2], n[2], 'A', 'D') = v[4];
    named_angle(res.angles, c[2], n[2], 'A', 'B') = v[5];
}

}  // namespace

GeoCheck can_2_3_geometric(const Triangulation& tri, const AngleAssignment& angles, int tet, int face,
                           double tol) {
    GeoCheck check;
    if (tri.gluing(tet, face)->target_tet == tet) return check;
    const FaceConfiguration cfg = face_configuration(tri, tet, face);

    check.reason = MoveBlocked::Reason::Geometric;
    const char face_edges[3][2] = {{'B', 'C'}, {'C', 'D'}, {'D', 'B'}};
    double worst = -1;
    for (const auto& e : face_edges) {
        const double sum = named_angle(angles, cfg.t1, cfg.names1, e[0], e[1]) +
                           named_angle(angles, cfg.t2, cfg.names2, e[0], e[1]);
        if (sum > worst) {
            worst = sum;
            check.offending = EdgeRef{cfg.t1, position_of(cfg.names1, e[0]), position_of(cfg.names1, e[1])};
        }
    }
    check.offending_sum = worst;
    check.ok = worst < pi - tol;
    if (check.ok) check.offending.reset();
    return check;
}

GeoMoveResult apply_2_3_geometric(const Triangulation& tri, const AngleAssignment& angles, int tet,
                                  int face, double tol) {
    const GeoCheck check = can_2_3_geometric(tri, angles, tet, face, tol);
    if (!check.ok)
        throw MoveBlocked(check.reason, check.reason == MoveBlocked::Reason::Geometric
                                            ? "2-3 move is not geometric"
                                            : "2-3 move needs two distinct tetrahedra");
    const FaceConfiguration cfg = face_configuration(tri, tet, face);
    GeoMoveResult res{pachner_2_3_frame(tri, tet, face), {}};
    res.angles = carry_untouched(res.frame, angles);

    const std::function<double(char, char)> old1 = [&](char x, char y) {
        return named_angle(angles, cfg.t1, cfg.names1, x, y);
    };
    const std::function<double(char, char)> old2 = [&](char x, char y) {
        return named_angle(angles, cfg.t2, cfg.names2, x, y);
    };

    // New tetrahedron around the face edge UV, seen from the link of V: the link
    // triangles P-U-M (from ABCD) and Q-U-M (from BCDE) merge into P-U-Q, whose
    // edge parameter at U is the product of the two old ones.
    struct Hinge {
        char u, v, m;
    };
    const Hinge hinges[3] = {{'B', 'C', 'D'}, {'C', 'D', 'B'}, {'B', 'D', 'C'}};  // ABCE, ACDE, ADBE
    for (int k = 0; k < 3; ++k) {
        const auto [u, v, m] = hinges[k];
        const double sin_p = std::sin(old1('A', v)), sin_m = std::sin(old2(m, v));
        const std::complex<double> w =
            std::polar(std::sin(old1(m, v)) / sin_p, old1(u, v)) *
            std::polar(std::sin(old2('E', v)) / sin_m, old2(u, v));
        if (!(sin_p > 0 && sin_m > 0 && std::isfinite(std::abs(w)) && w.imag() > 0 && std::abs(w) > 0)) {
            split_by_lambda(res, old1, old2);
            return res;
        }
        const AngleTriple<double> tri_angles = shape_to_angles(ShapeParameter<double>{w});
        const int t = res.frame.created[k];
        const NamedTet& names = res.frame.created_names[k];
        named_angle(res.angles, t, names, u, v) = tri_angles.alpha;
        named_angle(res.angles, t, names, 'A', v) = tri_angles.beta;
        named_angle(res.angles, t, names, 'E', v) = tri_angles.gamma;
    }
    return res;
}

GeoMoveResult apply_3_2_geometric(const Triangulation& tri, const AngleAssignment& angles, int edge) {
    const auto edges = compute_edge_classes(tri);
    if (edge < 0 || edge >= static_cast<int>(edges.size()))
        throw MoveBlocked(MoveBlocked::Reason::Degree, "no such edge");
    const EdgeConfiguration cfg = edge_configuration(tri, edges[edge]);
    GeoMoveResult res{pachner_3_2_frame(tri, edges[edge]), {}};
    res.angles = carry_untouched(res.frame, angles);

    auto old = [&](int k, char x, char y) { return named_angle(angles, cfg.tets[k], cfg.names[k], x, y); };
    // cfg tets are ABCE, ACDE, ADBE.
    const int t1 = res.frame.created[0], t2 = res.frame.created[1];
    const NamedTet& n1 = res.frame.created_names[0];
    const NamedTet& n2 = res.frame.created_names[1];
    named_angle(res.angles, t1, n1, 'A', 'B') = old(0, 'A', 'B') + old(2, 'A', 'B');
    named_angle(res.angles, t1, n1, 'A', 'C') = old(0, 'A', 'C') + old(1, 'A', 'C');
    named_angle(res.angles, t1, n1, 'A', 'D') = old(1, 'A', 'D') + old(2, 'A', 'D');
    named_angle(res.angles, t2, n2, 'E', 'B') = old(0, 'E', 'B') + old(2, 'E', 'B');
    named_angle(res.angles, t2, n2, 'E', 'C') = old(0, 'E', 'C') + old(1, 'E', 'C');
    named_angle(res.angles, t2, n2, 'E', 'D') = old(1, 'E', 'D') + old(2, 'E', 'D');
    return res;
}

}  // namespace chs
