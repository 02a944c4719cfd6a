#pragma once

#include <string>
#include <vector>

#include "dynmatch/engine.hpp"
#include "dynmatch/sparsifier.hpp"

#include "json.hpp"

namespace dynmatch {

struct CheckpointRecord {
    std::size_t updateIndex = 0;
    std::size_t engineSize = 0;
    long long oracleSize = -1; // -1 when skipped
    long long additiveGap = 0; // oracleSize - engineSize
    double ratio = 1.0;        // engineSize / oracleSize, 1 when oracle is 0
    bool atRebuild = false;
    bool oracleSkipped = false;
};

struct GuaranteeSummary {
    std::string kind = "none"; // additive | multiplicative | none
    double bound = 0.0;        // εn for additive, (1-2ε) floor for multiplicative
    std::size_t violations = 0;
    bool holds = true;
};

struct ConfigEcho {
    std::string engine;
    std::size_t n = 0;
    double epsilon = 0.0;
    std::size_t threshold = 0;
    std::size_t rebuildPeriod = 0;
    std::uint64_t seed = 0;
    std::size_t checkEvery = 0;
    bool measureDegree = false;
    std::string streamLabel;
};

struct Totals {
    std::uint64_t matrixProbes = 0;
    std::uint64_t listReads = 0;
    std::uint64_t rebuilds = 0;
    std::uint64_t phaseResets = 0;
    std::uint64_t updates = 0;
    double amortizedMatrixProbesPerUpdate = 0.0;
    double amortizedListReadsPerUpdate = 0.0;
};

struct RunReport {
    ConfigEcho config;
    std::vector<CheckpointRecord> checkpoints;
    std::vector<PhaseRecord> phases;
    std::vector<CertificateRecord> certificates;
    std::vector<InstanceReport> wrapperInstances; // multiplicative runs only
    std::vector<std::string> notes;               // e.g. oracle-skip warnings
    Totals totals;
    GuaranteeSummary guarantee;
    double wallMillis = 0.0; // meta only, excluded from determinism comparisons

    /// includeMeta=false drops the volatile header (timestamp, wall clock) so
    /// two identical runs compare byte-for-byte.
    nlohmann::json toJson(bool includeMeta = true) const;
    std::string toCsv() const;
};

/// Structural validation against the bundled schema description; returns the
/// list of problems (empty = valid).
std::vector<std::string> validateRunReport(const nlohmann::json& j);

/// The bundled schema description (field -> type outline).
nlohmann::json reportSchemaDescription();

} // namespace dynmatch
