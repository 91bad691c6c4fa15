#include "chs/simplex.hpp"

#include <limits>
#include <vector>

namespace chs {

namespace {

// Tableau with rows 0..m-1 for constraints and row m for the reduced costs of a
// minimization; last column holds the right-hand side.
struct Tableau {
    Eigen::MatrixXd t;
    std::vector<int> basis;
    int m = 0, cols = 0;

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (int r = 0; r <= m; ++r)
            if (r != row && t(r, col) != 0.0) t.row(r) -= t(r, col) * t.row(row);
        basis[row] = col;
    }

    // Bland's rule over columns [0, limit). Returns false if unbounded.
    bool run(int limit, double tol, long max_pivots) {
        for (long it = 0; it < max_pivots; ++it) {
            int enter = -1;
            for (int j = 0; j < limit; ++j)
                if (t(m, j) < -tol) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int r = 0; r < m; ++r) {
                if (t(r, enter) <= tol) continue;
                const double ratio = t(r, cols) / t(r, enter);
                if (leave < 0 || ratio < best - tol) {
                    best = ratio;
                    leave = r;
                } else if (ratio <= best + tol && basis[r] < basis[leave]) {
                    leave = r;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
        throw LpFailure("simplex exceeded its pivot budget");
    }
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  double tol) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (b.size() != m || c.size() != n) throw std::invalid_argument("LP dimensions do not match");

    Tableau tab;
    tab.m = m;
    tab.cols = n + m;
    tab.t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
    tab.basis.resize(m);
    for (int r = 0; r < m; ++r) {
        const double s = b(r) < 0 ? -1.0 : 1.0;
        tab.t.row(r).head(n) = s * A.row(r);
        tab.t(r, n + r) = 1.0;
        tab.t(r, n + m) = s * b(r);
        tab.basis[r] = n + r;
    }
    // Phase 1: minimize the sum of artificials.
    for (int r = 0; r < m; ++r) tab.t.row(m) -= tab.t.row(r);
    for (int r = 0; r < m; ++r) tab.t(m, n + r) = 0.0;

    const long budget = 50L * (n + m) * (n + m) + 1000;
    const double scale = 1.0 + b.cwiseAbs().maxCoeff();
    tab.run(n + m, tol, budget);
    if (-tab.t(m, n + m) > 1e-8 * scale) return {LpStatus::Infeasible, {}, 0.0};

    // Drive zero-level artificials out of the basis; rows that cannot be are redundant.
    std::vector<bool> redundant(m, false);
    for (int r = 0; r < m; ++r) {
        if (tab.basis[r] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (std::abs(tab.t(r, j)) > 1e-9) {
                col = j;
                break;
            }
        if (col >= 0)
            tab.pivot(r, col);
        else
            redundant[r] = true;
    }

    // Phase 2 on the original objective, artificial columns frozen out.
    tab.t.row(m).setZero();
    tab.t.row(m).head(n) = -c.transpose();
    for (int r = 0; r < m; ++r)
        if (!redundant[r] && tab.basis[r] < n) {
            const double cost = tab.t(m, tab.basis[r]);
            if (cost != 0.0) tab.t.row(m) -= cost * tab.t.row(r);
        }
    for (int r = 0; r < m; ++r)
        if (redundant[r]) tab.t.row(r).setZero();
    if (!tab.run(n, tol, budget)) return {LpStatus::Unbounded, {}, 0.0};

    LpResult out;
    out.status = LpStatus::Optimal;
    out.x = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < m; ++r)
        if (!redundant[r] && tab.basis[r] < n) out.x(tab.basis[r]) = tab.t(r, n + m);
    out.objective = c.dot(out.x);
    const double residual = (A * out.x - b).cwiseAbs().maxCoeff();
    if (residual > 1e-7 * scale || out.x.minCoeff() < -1e-7 * scale)
        throw LpFailure("simplex solution violates the constraints (residual " +
                        std::to_string(residual) + ")");
    return out;
}

}  // namespace chs
