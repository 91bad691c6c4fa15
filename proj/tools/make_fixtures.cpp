// Regenerates data/fixtures/flat1.json and the retriangulation suite in data/suite.
//
//     make_fixtures <data-dir>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <json.hpp>

#include "chs/io.hpp"
#include "chs/pachner.hpp"
#include "chs/pipeline.hpp"

namespace fs = std::filesystem;
using namespace chs;

namespace {

const char* kBases[] = {"m003", "m004", "m006", "m007", "m009", "m010", "m011", "m015", "m016", "m017",
                        "m019", "m022", "m023", "m026", "m029", "m030", "m032", "m033", "m034", "m035"};

// First 2-3 move on m006, in (tet, face) order, whose maximizer is on the
// boundary below the hyperbolic volume.
void make_flat1(const fs::path& data) {
    const Triangulation base = load_triangulation(data / "census/m006.json");
    const double chs_volume = maximize_volume(base)->volume;
    for (int t = 0; t < base.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            Triangulation tri;
            try {
                tri = pachner_2_3(base, t, f);
            } catch (const MoveBlocked&) {
                continue;
            }
            const auto out = maximize_volume(tri);
            if (!out || out->kind != OutcomeKind::Boundary || out->volume >= chs_volume - 1e-6) continue;
            tri.name = "flat1";
            save_triangulation(tri, data / "fixtures/flat1.json");
            std::cout << "flat1: m006 2-3 at tet " << t << " face " << f << ", boundary volume " << out->volume
                      << '\n';
            return;
        }
    throw std::runtime_error("no boundary 2-3 move found on m006");
}

// Random 2-3 moves on a census base until the maximizer reaches the boundary,
// checked only once `burn_in` moves have been made.
std::optional<std::pair<Triangulation, int>> boundary_walk(const Triangulation& base, std::uint64_t seed,
                                                            int burn_in) {
    std::mt19937_64 rng(seed);
    Triangulation tri = base;
    for (int moves = 1; moves <= burn_in + 12; ++moves) {
        bool applied = false;
        for (int draw = 0; draw < 20 && !applied; ++draw) {
            std::uniform_int_distribution<int> pick(0, 4 * tri.size() - 1);
            const int k = pick(rng);
            try {
                tri = pachner_2_3(tri, k / 4, k % 4);
                applied = true;
            } catch (const MoveBlocked&) {
            }
        }
        if (!applied) return std::nullopt;
        if (moves < burn_in) continue;
        const auto out = maximize_volume(tri);
        if (!out) return std::nullopt;
        if (out->kind == OutcomeKind::Boundary) return std::pair{tri, moves};
    }
    return std::nullopt;
}

void make_suite(const fs::path& data) {
    fs::create_directories(data / "suite");
    nlohmann::ordered_json manifest;
    manifest["fixtures"] = nlohmann::ordered_json::array();
    for (int burn_in : {1, 4})
        for (const char* name : kBases) {
            const Triangulation base = load_triangulation(data / "census" / (std::string(name) + ".json"));
            for (std::uint64_t seed = 1;; ++seed) {
                auto walk = boundary_walk(base, seed, burn_in);
                if (!walk) continue;
                auto& [tri, moves] = *walk;
                const std::string fixture =
                    std::string(name) + (burn_in > 1 ? "_b" : "_s") + std::to_string(seed);
                tri.name = fixture;
                save_triangulation(tri, data / "suite" / (fixture + ".json"));
                manifest["fixtures"].push_back({{"name", fixture},
                                                {"path", fixture + ".json"},
                                                {"base", name},
                                                {"seed", seed},
                                                {"burn_in", burn_in},
                                                {"moves", moves},
                                                {"tets", tri.size()}});
                std::cout << fixture << ": " << moves << " moves, " << tri.size() << " tets\n";
                break;
            }
        }
    std::ofstream(data / "suite/manifest.json") << manifest.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <data-dir>\n";
        return 1;
    }
    const fs::path data = argv[1];
    make_flat1(data);
    make_suite(data);
}
