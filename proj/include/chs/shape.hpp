#pragma once

#include <complex>
#include <stdexcept>

namespace chs {

/// Dihedral angles of one ideal tetrahedron on angle pairs 0, 1, 2.
template <typename Scalar>
struct AngleTriple {
    Scalar alpha, beta, gamma;

    Scalar sum() const { return alpha + beta + gamma; }
};

/// Shape parameter z of the pair-0 edge with its companions z' and z''.
template <typename Scalar>
struct ShapeParameter {
    std::complex<Scalar> z;

    std::complex<Scalar> z1() const { return (z - Scalar(1)) / z; }
    std::complex<Scalar> z2() const { return Scalar(1) / (Scalar(1) - z); }
};

/// arg z = alpha, |z| = sin(gamma)/sin(beta); then arg z' = beta and arg z'' = gamma.
template <typename Scalar>
ShapeParameter<Scalar> angles_to_shape(const AngleTriple<Scalar>& t) {
    using std::sin;
    if (!(t.alpha > 0 && t.beta > 0 && t.gamma > 0))
        throw std::domain_error("flat or negative angle triple has no shape parameter");
    return {std::polar(sin(t.gamma) / sin(t.beta), t.alpha)};
}

template <typename Scalar>
AngleTriple<Scalar> shape_to_angles(const ShapeParameter<Scalar>& s) {
    if (!(s.z.imag() > 0)) throw std::domain_error("shape parameter is not positively oriented");
    return {std::arg(s.z), std::arg(s.z1()), std::arg(s.z2())};
}

}  // namespace chs
