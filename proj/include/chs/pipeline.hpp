#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "chs/optimize.hpp"
#include "chs/search.hpp"

namespace chs {

/// Interior point, tangent basis and maximize in one call; nullopt when the
/// triangulation admits no strict angle structure.
std::optional<MaximizeOutcome> maximize_volume(const Triangulation& tri, const MaximizeOptions& opts = {});

enum class StrategyKind { Guided, Random, Hybrid };

std::string to_string(StrategyKind kind);
/// Accepts "guided", "random", "hybrid"; throws std::invalid_argument otherwise.
StrategyKind parse_strategy(const std::string& name);

struct Strategy {
    StrategyKind kind = StrategyKind::Guided;
    std::uint64_t seed = 0;
    int hybrid_threshold = 4;  // Hybrid guides while fewer tets are flat
    int phase_cap = 50;
};

enum class ChsStatus { Success, NoAngleStructure, Exhausted };

std::string to_string(ChsStatus status);

struct PhaseRecord {
    int phase = 0;
    std::string action;  // what followed the maximization: none, guided, random, random-fallback
    int tets = 0;
    int edges = 0;
    int vertices = 0;
    int moves = 0;  // Pachner moves of the action
    std::optional<OutcomeKind> outcome;  // none when no strict angle structure was found
    double volume = 0;
    int flat_count = 0;
    double seconds = 0;
};

struct PhaseLog {
    std::vector<PhaseRecord> phases;
    ChsStatus status = ChsStatus::Exhausted;

    int total_moves() const;
};

struct PipelineOptions {
    MaximizeOptions maximize;
    SearchOptions search;
};

struct ChsResult {
    ChsStatus status = ChsStatus::Exhausted;
    Triangulation tri;
    std::optional<AngleAssignment> angles;  // the CHS on success
    double volume = 0;
    PhaseLog log;
};

/// Maximize, retriangulate on Boundary, repeat. Throws std::invalid_argument
/// unless the input is a one-vertex ideal triangulation.
ChsResult find_chs(const Triangulation& tri, const Strategy& strategy, const PipelineOptions& opts = {});

struct RetriangulationResult {
    Triangulation tri;
    int attempted = 0;  // 2-3 slots, 4n
    int moves = 0;      // applied 2-3 moves plus simplification moves
};

/// 4n random combinatorial 2-3 moves (blocked draws are redrawn, at most 20
/// per slot) followed by greedy_simplify.
RetriangulationResult random_retriangulate(const Triangulation& tri, std::mt19937_64& rng);

struct SimplifyResult {
    Triangulation tri;
    int moves = 0;
};

/// 3-2 moves on degree-3 edges and 2-0 moves on degree-2 edges until neither applies.
SimplifyResult greedy_simplify(const Triangulation& tri);

struct BenchRow {
    std::string name, sig, strategy;
    std::uint64_t seed = 0;
    bool success = false;
    int phases = 0, moves = 0;
    double volume = 0;
    double seconds = 0;
    std::string note;  // set when the fixture could not be read
};

struct BenchFixture {
    std::string name;
    std::filesystem::path path;
};

/// Manifest JSON {"fixtures": [{"name": ..., "path": ...}, ...]}; paths are
/// relative to the manifest's directory.
std::vector<BenchFixture> read_manifest(const std::filesystem::path& manifest);

std::vector<BenchRow> run_bench(const std::vector<BenchFixture>& fixtures, const std::vector<StrategyKind>& strategies,
                                const std::vector<std::uint64_t>& seeds, const PipelineOptions& opts = {},
                                int phase_cap = 50);

/// Header name,sig,strategy,seed,success,phases,moves,volume,seconds and one line per row.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Per strategy: success rate within k phases and within m moves.
void print_bench_summary(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace chs
