#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "chs/lobachevsky.hpp"

namespace chs {

/// Angle assignment on n tetrahedra: entry 3t + pair, pair as in angle_pair().
template <typename Scalar>
using AngleVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using AngleAssignment = AngleVector<double>;

inline int angle_index(int tet, int pair) { return 3 * tet + pair; }

/// Sum of L over all angles.
template <typename Derived>
typename Derived::Scalar volume(const Eigen::MatrixBase<Derived>& angles) {
    using Scalar = typename Derived::Scalar;
    return angles.unaryExpr([](Scalar x) { return lobachevsky(x); }).sum();
}

/// Full gradient -log sin a_i; only meaningful strictly inside (0, pi).
template <typename Derived>
AngleVector<typename Derived::Scalar> volume_gradient(const Eigen::MatrixBase<Derived>& angles) {
    using Scalar = typename Derived::Scalar;
    return angles.unaryExpr([](Scalar x) { return -std::log(std::sin(x)); });
}

/// Components B^T (-log sin a). Throws std::domain_error at closure points.
template <typename DerivedA, typename DerivedB>
AngleVector<typename DerivedA::Scalar> reduced_gradient(const Eigen::MatrixBase<DerivedA>& angles,
                                                        const Eigen::MatrixBase<DerivedB>& basis) {
    using Scalar = typename DerivedA::Scalar;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    if ((angles.array() <= Scalar(0)).any() || (angles.array() >= pi).any())
        throw std::domain_error("reduced gradient is undefined on the boundary of the polytope");
    return basis.transpose() * volume_gradient(angles);
}

}  // namespace chs
