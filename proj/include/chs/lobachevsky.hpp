#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace chs {

namespace detail {

// zeta(2k) for k = 1..kZetaTerms.
inline constexpr int kZetaTerms = 40;

inline const std::array<double, kZetaTerms + 1>& zeta_even() {
    static const std::array<double, kZetaTerms + 1> table = [] {
        std::array<double, kZetaTerms + 1> z{};
        for (int k = 1; k <= kZetaTerms; ++k) z[k] = std::riemann_zeta(2.0 * k);
        return z;
    }();
    return table;
}

// Series on [0, pi/2].
template <typename Scalar>
Scalar lobachevsky_reduced(Scalar theta) {
    using std::log;
    if (theta == Scalar(0)) return Scalar(0);
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar ratio = (theta / pi) * (theta / pi);
    Scalar sum = theta - theta * log(2 * theta);
    Scalar power = theta;
    const auto& zeta = zeta_even();
    for (int k = 1; k <= kZetaTerms; ++k) {
        power *= ratio;
        const Scalar term = Scalar(zeta[k]) * power / Scalar(k * (2 * k + 1));
        sum += term;
        if (term < Scalar(1e-17)) break;
    }
    return sum;
}

}  // namespace detail

/// L(x) = -int_0^x log|2 sin t| dt, odd and pi-periodic.
template <typename Scalar>
Scalar lobachevsky(Scalar x) {
    using std::floor;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    if (x < 0) return -lobachevsky(-x);
    Scalar r = x - pi * floor(x / pi);
    if (r >= pi) r -= pi;
    if (r > pi / 2) return -detail::lobachevsky_reduced(pi - r);
    return detail::lobachevsky_reduced(r);
}

/// L'(x) = -log|2 sin x|.
template <typename Scalar>
Scalar lobachevsky_derivative(Scalar x) {
    using std::abs;
    using std::log;
    using std::sin;
    return -log(abs(2 * sin(x)));
}

}  // namespace chs
