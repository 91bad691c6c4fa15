#include "chs/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace chs {

using nlohmann::json;
using nlohmann::ordered_json;

Triangulation parse_triangulation(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("tets") || !doc["tets"].is_array())
        throw ParseError("expected an object with a \"tets\" array");

    Triangulation tri;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ParseError("\"name\" must be a string");
        tri.name = doc["name"].get<std::string>();
    }
    const auto& tets = doc["tets"];
    const int n = static_cast<int>(tets.size());
    tri.tets.resize(n);
    for (int t = 0; t < n; ++t) {
        const auto& entry = tets[t];
        if (!entry.is_array() || entry.size() != 4)
            throw ParseError("tetrahedron " + std::to_string(t) + " must list 4 faces");
        for (int f = 0; f < 4; ++f) {
            const auto& face = entry[f];
            if (face.is_null()) continue;
            if (!face.is_array() || face.size() != 2 || !face[0].is_number_integer() ||
                !face[1].is_array() || face[1].size() != 4)
                throw ParseError("face " + std::to_string(f) + " of tetrahedron " +
                                 std::to_string(t) + " must be null or [tet, [p0,p1,p2,p3]]");
            std::array<int, 4> img{};
            for (int i = 0; i < 4; ++i) {
                if (!face[1][i].is_number_integer())
                    throw ParseError("permutation entries must be integers");
                img[i] = face[1][i].get<int>();
            }
            try {
                tri.tets[t].gluings[f] = FaceGluing{face[0].get<int>(), Perm4(img)};
            } catch (const std::invalid_argument& e) {
                throw ParseError("tetrahedron " + std::to_string(t) + " face " +
                                 std::to_string(f) + ": non-bijective permutation");
            }
        }
    }
    try {
        check_gluings(tri);
    } catch (const InvalidTriangulation& e) {
        throw ParseError(e.what());
    }
    return tri;
}

std::string serialize_triangulation(const Triangulation& tri) {
    ordered_json doc;
    doc["name"] = tri.name;
    ordered_json tets = ordered_json::array();
    for (const auto& tet : tri.tets) {
        ordered_json faces = ordered_json::array();
        for (const auto& g : tet.gluings) {
            if (!g) {
                faces.push_back(nullptr);
                continue;
            }
            const auto img = g->perm.images();
            faces.push_back(ordered_json::array(
                {g->target_tet, ordered_json::array({img[0], img[1], img[2], img[3]})}));
        }
        tets.push_back(std::move(faces));
    }
    doc["tets"] = std::move(tets);
    return doc.dump();
}

Triangulation load_triangulation(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_triangulation(buffer.str());
}

void save_triangulation(const Triangulation& tri, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << serialize_triangulation(tri) << '\n';
}

}  // namespace chs
