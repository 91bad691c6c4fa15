#pragma once

#include <stdexcept>

#include <Eigen/Dense>

namespace chs {

class LpFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;
    double objective = 0;
};

/// maximize c.x subject to A x = b, x >= 0, by two-phase dense simplex with
/// Bland's rule. Throws LpFailure when the pivoting stalls or the final point
/// violates the constraints beyond `tol`-scaled residuals.
LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  double tol = 1e-10);

}  // namespace chs
