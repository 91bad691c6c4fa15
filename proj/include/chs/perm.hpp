#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace chs {

/// A permutation of the four vertex labels {0,1,2,3} of a tetrahedron.
class Perm4 {
public:
    constexpr Perm4() : images_{0, 1, 2, 3} {}

    /// Throws std::invalid_argument unless the images form a bijection.
    constexpr explicit Perm4(std::array<int, 4> images) : images_{} {
        bool seen[4] = {false, false, false, false};
        for (int i = 0; i < 4; ++i) {
            int v = images[i];
            if (v < 0 || v > 3 || seen[v])
                throw std::invalid_argument("permutation is not a bijection on {0,1,2,3}");
            seen[v] = true;
            images_[i] = static_cast<std::uint8_t>(v);
        }
    }

    constexpr Perm4(int a, int b, int c, int d) : Perm4(std::array<int, 4>{a, b, c, d}) {}

    constexpr int operator[](int i) const { return images_[i]; }

    constexpr Perm4 inverse() const {
        Perm4 out;
        for (int i = 0; i < 4; ++i) out.images_[images_[i]] = static_cast<std::uint8_t>(i);
        return out;
    }

    /// (*this * other)[i] = (*this)[other[i]]
    constexpr Perm4 operator*(const Perm4& other) const {
        Perm4 out;
        for (int i = 0; i < 4; ++i) out.images_[i] = images_[other.images_[i]];
        return out;
    }

    constexpr int sign() const {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (images_[i] > images_[j]) ++inversions;
        return inversions % 2 == 0 ? 1 : -1;
    }

    /// Position of this permutation in the lexicographic ordering of all 24.
    constexpr int index() const {
        int idx = 0;
        int factorial[4] = {6, 2, 1, 1};
        for (int i = 0; i < 4; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < 4; ++j)
                if (images_[j] < images_[i]) ++smaller;
            idx += smaller * factorial[i];
        }
        return idx;
    }

    static constexpr Perm4 from_index(int idx) {
        std::array<int, 4> pool = {0, 1, 2, 3};
        int factorial[4] = {6, 2, 1, 1};
        std::array<int, 4> img{};
        int remaining = 4;
        for (int i = 0; i < 4; ++i) {
            int k = idx / factorial[i];
            idx %= factorial[i];
            img[i] = pool[k];
            for (int j = k; j + 1 < remaining; ++j) pool[j] = pool[j + 1];
            --remaining;
        }
        return Perm4(img);
    }

    constexpr std::array<int, 4> images() const {
        return {images_[0], images_[1], images_[2], images_[3]};
    }

    std::string str() const {
        std::string s(4, '0');
        for (int i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + images_[i]);
        return s;
    }

    friend constexpr bool operator==(const Perm4&, const Perm4&) = default;

private:
    std::array<std::uint8_t, 4> images_;
};

/// Edge numbering inside a tetrahedron: 01, 02, 03, 12, 13, 23.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices = {{
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_number(int a, int b) {
    if (a > b) { int t = a; a = b; b = t; }
    if (a == 0) return b - 1;
    if (a == 1) return b + 1;
    return 5;
}

/// Opposite-edge pair carrying one dihedral angle: 0 = 01|23, 1 = 02|13, 2 = 03|12.
constexpr int angle_pair_of_edge(int edge) { return edge < 3 ? edge : 5 - edge; }

constexpr int angle_pair(int a, int b) { return angle_pair_of_edge(edge_number(a, b)); }

}  // namespace chs
