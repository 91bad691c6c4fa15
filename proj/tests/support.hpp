#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "chs/io.hpp"
#include "chs/triangulation.hpp"

namespace chs::testing {

inline std::string data_path(const std::string& rel) { return std::string(CHS_DATA_DIR) + "/" + rel; }

inline Triangulation fixture(const std::string& name) {
    return load_triangulation(data_path("fixtures/" + name + ".json"));
}

inline Perm4 random_perm(std::mt19937_64& rng) {
    std::array<int, 4> img = {0, 1, 2, 3};
    std::shuffle(img.begin(), img.end(), rng);
    return Perm4(img);
}

/// Independent relabeling: tet t -> order[t], vertex v of t -> maps[t][v].
inline Triangulation shuffled(const Triangulation& tri, std::mt19937_64& rng) {
    const int n = tri.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Perm4> maps(n);
    for (auto& m : maps) m = random_perm(rng);
    Triangulation out;
    out.name = tri.name;
    out.tets.resize(n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g) continue;
            out.tets[order[t]].gluings[maps[t][f]] =
                FaceGluing{order[g->target_tet], maps[g->target_tet] * g->perm * maps[t].inverse()};
        }
    return out;
}

/// Brute-force union-find over the 6n tetrahedron edges: returns class sizes.
inline std::vector<int> edge_degree_oracle(const Triangulation& tri) {
    const int n = tri.size();
    std::vector<int> parent(6 * n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b) {
                    if (a == f || b == f) continue;
                    const int x = 6 * t + edge_number(a, b);
                    const int y = 6 * g->target_tet + edge_number(g->perm[a], g->perm[b]);
                    parent[find(x)] = find(y);
                }
        }
    std::vector<int> count(6 * n, 0);
    for (int i = 0; i < 6 * n; ++i) ++count[find(i)];
    std::vector<int> degrees;
    for (int c : count)
        if (c) degrees.push_back(c);
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

inline std::vector<int> degrees(const std::vector<EdgeClass>& edges) {
    std::vector<int> out;
    for (const auto& e : edges) out.push_back(e.degree());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace chs::testing
