#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dynmatch/report.hpp"
#include "dynmatch/stream.hpp"

namespace dynmatch {

enum class EngineKind { Ors, OrsMultiplicative, Maximal, Rebuild };

EngineKind parseEngineKind(const std::string& name);
std::string engineKindName(EngineKind kind);

struct BenchConfig {
    EngineKind kind = EngineKind::Ors;
    double epsilon = 0.1;
    std::size_t threshold = 0;     // 0 = engine default ⌈n^1.5⌉
    std::size_t rebuildPeriod = 0; // 0 = default max(1, ⌊εn/2⌋); also the rebuild-baseline period
    std::uint64_t seed = 0;
    std::size_t checkEvery = 0;    // extra checkpoint grid; 0 = rebuilds + final only
    bool measureDegree = false;
    std::size_t oracleCap = 5000;
    std::string streamLabel;
};

/// Replays the stream, snapshots at every rebuild, every checkEvery updates
/// and at the end, queries the exact oracle at each snapshot (skipping with a
/// note above oracleCap), and evaluates the engine's guarantee.
RunReport runBench(const UpdateStream& stream, const BenchConfig& config);

/// Runs every config over the same stream with per-checkpoint rows aligned:
/// a snapshot of all engines is taken whenever any of them rebuilds or the
/// grid fires, so checkpoint lists share update indices.
std::vector<RunReport> compareEngines(const UpdateStream& stream,
                                      const std::vector<BenchConfig>& configs);

} // namespace dynmatch
