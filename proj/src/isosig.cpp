#include "chs/isosig.hpp"

#include <array>
#include <limits>

namespace chs {

namespace {

constexpr std::string_view kAlphabet =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-";

int symbol_value(char c) {
    const auto pos = kAlphabet.find(c);
    if (pos == std::string_view::npos)
        throw SignatureError(std::string("invalid signature character '") + c + "'");
    return static_cast<int>(pos);
}

int index_width(int n) {
    int width = 1;
    long long capacity = 64;
    while (capacity <= n) {
        capacity *= 64;
        ++width;
    }
    return width;
}

void append_number(std::string& out, int value, int width) {
    for (int i = width - 1; i >= 0; --i) out.push_back(kAlphabet[(value >> (6 * i)) & 63]);
}

int read_number(std::string_view text, std::size_t& pos, int width) {
    if (pos + width > text.size()) throw SignatureError("signature is truncated");
    int value = 0;
    for (int i = 0; i < width; ++i) value = value * 64 + symbol_value(text[pos++]);
    return value;
}

// Normal form from one starting choice: the sequence (target label, perm index)
// over faces of tetrahedra in discovery order. Returns false, leaving `out`
// partial, as soon as the sequence is known to exceed `best`.
bool normal_form(const Triangulation& tri, int start, Perm4 start_map,
                 const std::vector<int>* best, std::vector<int>& out, Relabeling* map) {
    const int n = tri.size();
    std::vector<int> label(n, -1);
    std::vector<int> order;
    std::vector<Perm4> sigma;  // new vertex -> original vertex, per new label
    order.reserve(n);
    sigma.reserve(n);
    label[start] = 0;
    order.push_back(start);
    sigma.push_back(start_map);
    out.clear();

    bool deciding = best != nullptr;
    auto emit = [&](int value) {
        const std::size_t at = out.size();
        out.push_back(value);
        if (!deciding) return true;
        if (value < (*best)[at]) {
            deciding = false;
            return true;
        }
        return value == (*best)[at];
    };

    for (int k = 0; k < static_cast<int>(order.size()); ++k) {
        const int t = order[k];
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = *tri.gluing(t, sigma[k][f]);
            if (label[g.target_tet] < 0) {
                label[g.target_tet] = static_cast<int>(order.size());
                order.push_back(g.target_tet);
                sigma.push_back(g.perm * sigma[k]);
            }
            const int k2 = label[g.target_tet];
            const Perm4 local = sigma[k2].inverse() * g.perm * sigma[k];
            if (!emit(k2) || !emit(local.index())) return false;
        }
    }
    if (static_cast<int>(order.size()) != n) throw SignatureError("triangulation is not connected");
    if (map) {
        map->tet_image = label;
        map->vertex_maps.assign(n, Perm4());
        for (int k = 0; k < n; ++k) map->vertex_maps[order[k]] = sigma[k].inverse();
    }
    return true;
}

void require_closed(const Triangulation& tri) {
    if (tri.size() == 0) throw SignatureError("empty triangulation");
    if (!tri.closed()) throw SignatureError("signatures need a closed gluing table");
}

std::vector<int> minimal_form(const Triangulation& tri) {
    std::vector<int> best, candidate;
    for (int start = 0; start < tri.size(); ++start)
        for (int p = 0; p < 24; ++p) {
            const bool improved =
                normal_form(tri, start, Perm4::from_index(p), best.empty() ? nullptr : &best,
                            candidate, nullptr);
            if (improved && (best.empty() || candidate < best)) best.swap(candidate);
        }
    return best;
}

std::string encode(int n, const std::vector<int>& form) {
    const int width = index_width(n);
    std::string out;
    out.push_back(kAlphabet[width]);
    append_number(out, n, width);
    for (std::size_t i = 0; i < form.size(); i += 2) {
        append_number(out, form[i], width);
        out.push_back(kAlphabet[form[i + 1]]);
    }
    return out;
}

}  // namespace

Signature canonical_signature(const Triangulation& tri) {
    require_closed(tri);
    return Signature{encode(tri.size(), minimal_form(tri))};
}

CanonicalForm canonical_form(const Triangulation& tri) {
    require_closed(tri);
    const std::vector<int> best = minimal_form(tri);
    CanonicalForm out{Signature{encode(tri.size(), best)}, {}};
    std::vector<int> candidate;
    for (int start = 0; start < tri.size(); ++start)
        for (int p = 0; p < 24; ++p) {
            Relabeling map;
            if (normal_form(tri, start, Perm4::from_index(p), &best, candidate, &map) &&
                candidate == best)
                out.relabelings.push_back(std::move(map));
        }
    return out;
}

std::vector<Relabeling> canonical_relabelings(const Triangulation& tri) {
    return canonical_form(tri).relabelings;
}

Triangulation relabel(const Triangulation& tri, const Relabeling& map) {
    Triangulation out;
    out.name = tri.name;
    out.tets.resize(tri.size());
    for (int t = 0; t < tri.size(); ++t) {
        const Perm4& mt = map.vertex_maps[t];
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g) continue;
            const Perm4& mu = map.vertex_maps[g->target_tet];
            out.tets[map.tet_image[t]].gluings[mt[f]] =
                FaceGluing{map.tet_image[g->target_tet], mu * g->perm * mt.inverse()};
        }
    }
    return out;
}

Triangulation decode_signature(std::string_view text) {
    if (text.empty()) throw SignatureError("empty signature");
    std::size_t pos = 0;
    const int width = symbol_value(text[pos++]);
    if (width < 1 || width > 4) throw SignatureError("bad index width");
    const int n = read_number(text, pos, width);
    if (n < 1) throw SignatureError("signature encodes no tetrahedra");
    if (text.size() != 1 + static_cast<std::size_t>(width) + 4ull * n * (width + 1))
        throw SignatureError("signature length does not match its tetrahedron count");

    Triangulation tri;
    tri.tets.resize(n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const int target = read_number(text, pos, width);
            const int perm = symbol_value(text[pos++]);
            if (target >= n || perm >= 24) throw SignatureError("signature entry out of range");
            tri.tets[t].gluings[f] = FaceGluing{target, Perm4::from_index(perm)};
        }
    try {
        check_gluings(tri);
    } catch (const InvalidTriangulation& e) {
        throw SignatureError(std::string("signature does not describe a gluing: ") + e.what());
    }
    if (canonical_signature(tri).text != text) throw SignatureError("signature is not canonical");
    return tri;
}

}  // namespace chs
