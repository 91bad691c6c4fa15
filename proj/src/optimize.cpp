#include "chs/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace chs {

using std::numbers::pi;

FlatClassification classify_flat(const AngleAssignment& angles, double eps) {
    FlatClassification out;
    const int n = static_cast<int>(angles.size() / 3);
    for (int t = 0; t < n; ++t) {
        const Eigen::Vector3d a = angles.segment<3>(3 * t);
        int small = 0, large = -1;
        for (int p = 0; p < 3; ++p) {
            if (a(p) < eps) ++small;
            if (a(p) > pi - eps) large = p;
        }
        if (small == 0) continue;
        out.degenerate.push_back(t);
        if (small == 2 && large >= 0)
            out.flat.push_back({t, large});
        else if (small == 1 && large < 0)
            out.anomalies.push_back(t);
    }
    return out;
}

std::string to_string(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::InteriorCHS: return "InteriorCHS";
        case OutcomeKind::Boundary: return "Boundary";
        case OutcomeKind::Stalled: return "Stalled";
    }
    return "?";
}

namespace {

// Angles below this are held fixed while the others move.
constexpr double kPinned = 1e-9;

bool inside(const AngleAssignment& x) { return x.minCoeff() > 0 && x.maxCoeff() < pi; }

// Orthonormal basis of the directions in span(B) that leave the `fixed` angles unchanged.
Eigen::MatrixXd pinned_basis(const Eigen::MatrixXd& B, const std::vector<int>& fixed) {
    Eigen::MatrixXd rows(fixed.size(), B.cols());
    for (std::size_t k = 0; k < fixed.size(); ++k) rows.row(k) = B.row(fixed[k]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(rows);
    lu.setThreshold(1e-10);
    if (lu.dimensionOfKernel() == 0) return {};
    const Eigen::MatrixXd W = B * lu.kernel();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(W);
    return qr.householderQ() * Eigen::MatrixXd::Identity(W.rows(), W.cols());
}

// Stationary within the pinned face: true if the reduced gradient g is a
// combination of the pinned rows with no multiplier favouring a larger angle.
bool pinned_critical(const Eigen::MatrixXd& B, const std::vector<int>& fixed, const Eigen::VectorXd& g) {
    Eigen::MatrixXd rows(B.cols(), fixed.size());
    for (std::size_t k = 0; k < fixed.size(); ++k) rows.col(k) = B.row(fixed[k]).transpose();
    const Eigen::VectorXd mu = rows.completeOrthogonalDecomposition().solve(g);
    return (mu.array() <= 0).all();
}

}  // namespace

MaximizeOutcome maximize(const Triangulation& tri, const AngleAssignment& start,
                         const TangentBasis& basis, const MaximizeOptions& opts) {
    const Eigen::MatrixXd& B = basis.columns;
    if (start.size() != 3 * tri.size() || B.rows() != start.size())
        throw std::invalid_argument("starting point does not match the triangulation");
    if (start.minCoeff() <= 0 || start.maxCoeff() >= pi)
        throw std::invalid_argument("starting point is not strictly interior");

    MaximizeOutcome out;
    AngleAssignment x = start;
    double vol = volume(x);
    out.volume_trace.push_back(vol);

    auto finish = [&](OutcomeKind kind, const Eigen::VectorXd& g) {
        out.kind = kind;
        out.angles = x;
        out.volume = vol;
        out.gradient_norm = g.norm();
        if (kind == OutcomeKind::Boundary) out.flat_tets = classify_flat(x, opts.flat_eps).flat;
        return out;
    };
    auto interior_done = [&](const Eigen::VectorXd& g) {
        return g.norm() < opts.grad_tol && x.minCoeff() > opts.flat_eps;
    };
    auto accept = [&](const AngleAssignment& next, double next_vol) {
        x = next;
        vol = next_vol;
        out.volume_trace.push_back(vol);
    };

    // One ascent step within span(W).
    // Returns false when no increase of the volume is found.
    auto ascend = [&](const Eigen::MatrixXd& W) {
        const Eigen::VectorXd g = W.transpose() * volume_gradient(x);

        // Newton step on -H = W^T diag(cot x) W, damped in the affine-scaling
        // metric W^T diag(1/x^2) W just enough that the full step keeps every
        // angle above (1 - boundary_fraction) of its value. Damping lets the
        // iterate slide along a face instead of jamming against it.
        const Eigen::VectorXd curvature = x.array().cos() / x.array().sin();
        const Eigen::MatrixXd negH = W.transpose() * curvature.asDiagonal() * W;
        const Eigen::MatrixXd scaling = W.transpose() * x.array().square().inverse().matrix().asDiagonal() * W;
        const double unit = std::max(1.0, negH.diagonal().cwiseAbs().maxCoeff());
        Eigen::VectorXd d, step;
        bool newton = false;
        for (double lambda = 0; lambda <= 1e8; lambda = lambda == 0 ? 1e-12 : lambda * 10) {
            const Eigen::MatrixXd M = negH + lambda * scaling;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
            if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() <= 1e-10 * unit) continue;
            d = ldlt.solve(g);
            step = W * d;
            if ((step.array() >= -opts.boundary_fraction * x.array()).all()) {
                newton = lambda == 0;
                break;
            }
            d.resize(0);
        }
        double alpha = 1.0;
        if (d.size() == 0) {
            // Steepest ascent, cut to the same fraction of the distance to the boundary.
            d = g;
            step = W * d;
            for (Eigen::Index i = 0; i < step.size(); ++i)
                if (step(i) < 0) alpha = std::min(alpha, -opts.boundary_fraction * x(i) / step(i));
        }

        // Armijo backtracking with strict ascent.
        const double slope = g.dot(d);
        AngleAssignment trial;
        double trial_vol = vol;
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            trial = x + alpha * step;
            if (inside(trial)) {
                trial_vol = volume(trial);
                if (trial_vol > vol && trial_vol >= vol + 1e-4 * alpha * slope) {
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (accepted && alpha == 1.0) {
            // A damped step can stop well short of the boundary; try stretching it.
            double stretch = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < step.size(); ++i)
                if (step(i) < 0) stretch = std::min(stretch, -opts.boundary_fraction * x(i) / step(i));
            if (std::isfinite(stretch) && stretch > 1.0) {
                const AngleAssignment far = x + stretch * step;
                if (inside(far) && volume(far) > trial_vol) {
                    trial = far;
                    trial_vol = volume(far);
                }
            }
        }
        if (accepted) {
            accept(trial, trial_vol);
            return true;
        }
        // Volume gains below double precision: take the full Newton step if
        // it still shrinks the gradient.
        if (newton) {
            trial = x + step;
            if (inside(trial) && (W.transpose() * volume_gradient(trial)).norm() < 0.5 * g.norm()) {
                accept(trial, volume(trial));
                return true;
            }
        }
        return false;
    };

    Eigen::VectorXd g = B.transpose() * volume_gradient(x);
    bool converged = false;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        if (interior_done(g)) return finish(OutcomeKind::InteriorCHS, g);
        out.iterations = iter + 1;

        std::vector<int> fixed;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            if (x(i) < kPinned) fixed.push_back(static_cast<int>(i));
        bool moved = false;
        if (!fixed.empty()) {
            const Eigen::MatrixXd W = pinned_basis(B, fixed);
            if (W.cols() > 0) moved = ascend(W);
            if (!moved && pinned_critical(B, fixed, g)) {
                converged = true;
                break;
            }
        }
        if (!moved && !ascend(B)) {
            converged = true;
            break;
        }
        g = B.transpose() * volume_gradient(x);
    }
    if (interior_done(g)) return finish(OutcomeKind::InteriorCHS, g);
    if (converged && x.minCoeff() < opts.flat_eps) {
        const FlatClassification c = classify_flat(x, opts.flat_eps);
        if (c.anomalies.empty() && !c.flat.empty() && c.flat.size() == c.degenerate.size())
            return finish(OutcomeKind::Boundary, g);
    }
    return finish(OutcomeKind::Stalled, g);
}

}  // namespace chs
