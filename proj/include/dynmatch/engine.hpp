#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/matching.hpp"
#include "dynmatch/rng.hpp"
#include "dynmatch/static_matcher.hpp"
#include "dynmatch/stream.hpp"

namespace dynmatch {

struct EngineConfig {
    std::size_t n = 0;
    double epsilon = 0.1;
    /// Phase length; unset selects the default ⌈n^1.5⌉. Must be >= 1.
    std::optional<std::size_t> threshold;
    std::uint64_t rootSeed = 0;
    /// Rebuild cadence; unset selects the default max(1, ⌊εn/2⌋).
    std::optional<std::size_t> rebuildPeriod;
    bool measureDegree = false;
    /// Re-validate matching/overlay invariants after every update (tests).
    bool strictChecks = false;

    static std::size_t defaultThreshold(std::size_t n) {
        return std::size_t(std::ceil(std::pow(double(n), 1.5)));
    }
    static std::size_t defaultRebuildPeriod(std::size_t n, double epsilon) {
        return std::max<std::size_t>(1, std::size_t(epsilon * double(n) / 2.0));
    }
};

struct CertificateRecord {
    std::uint64_t rebuildIndex = 0;
    std::uint64_t phaseIndex = 0;
    std::size_t size = 0;
    double degreeProxy = 1.0;
    double measuredDegree = -1.0; // < 0 when not measured
};

struct PhaseRecord {
    std::uint64_t phaseIndex = 0;
    std::uint64_t rebuilds = 0;
    std::uint64_t certificates = 0;
    double sumInverseD = 0.0; // Σ 1/degreeProxy over the phase's certificates
};

struct Metrics {
    std::uint64_t matrixProbes = 0;
    std::uint64_t listReads = 0;
    std::uint64_t rebuilds = 0;
    std::uint64_t phaseResets = 0;
    std::uint64_t updatesApplied = 0;
    std::uint64_t c1Rebuilds = 0;
    std::uint64_t c2Rebuilds = 0;
    std::uint64_t downgradedRebuilds = 0;
    std::vector<CertificateRecord> certificateLog;
    std::vector<PhaseRecord> phases; // closed phases plus the live one
};

/// Everything a rebuild observer may inspect; valid only during the call.
struct RebuildInfo {
    std::uint64_t rebuildIndex;
    std::uint64_t phaseIndex;
    std::uint64_t updateIndex;
    const SolveOutcome& outcome;
    const std::vector<Edge>& sparseEdges;
    bool certificateDisjointFromAccumulated;
};

/// The phase-structured fully dynamic matcher.
///
/// Updates route into the graph and the phase overlays; every `threshold`
/// updates the overlays reset (a phase ends); every `rebuildPeriod` updates
/// (counted within the phase, so update 0 of a phase rebuilds too) the
/// matching is recomputed by matchAndCertify over the dense side G − added
/// and the sparse side added ∪ certified − deleted, and a C2 certificate is
/// merged into the certified overlay. One rebuild fires at construction.
class DynamicMatchingEngine {
public:
    explicit DynamicMatchingEngine(const EngineConfig& config);

    void applyUpdate(const UpdateEvent& ev);

    const Matching& currentMatching() const { return matching_; }
    Metrics metricsSnapshot() const;

    const EngineConfig& config() const { return config_; }
    std::size_t threshold() const { return threshold_; }
    std::size_t rebuildPeriod() const { return rebuildPeriod_; }
    const DynamicGraph& graph() const { return graph_; }
    const OverlaySet& overlays() const { return overlays_; }
    std::uint64_t rebuildIndex() const { return rebuildIndex_; }
    std::uint64_t phaseIndex() const { return phaseIndex_; }
    std::uint64_t updatesInPhase() const { return updatesInPhase_; }

    void setRebuildObserver(std::function<void(const RebuildInfo&)> fn) {
        observer_ = std::move(fn);
    }

    /// Harness hook fired after every k-th applied update (and not at
    /// rebuilds; pair it with the rebuild observer for full coverage).
    void setUpdateObserver(std::size_t everyK,
                           std::function<void(std::uint64_t updateIndex)> fn) {
        updateEvery_ = everyK;
        updateObserver_ = std::move(fn);
    }

private:
    void rebuild();
    void verifyInvariants() const;
    PhaseRecord& livePhase();

    EngineConfig config_;
    std::size_t threshold_ = 1;
    std::size_t rebuildPeriod_ = 1;
    DynamicGraph graph_;
    OverlaySet overlays_;
    Matching matching_;
    Rng rng_;
    std::uint64_t updatesInPhase_ = 0;
    std::uint64_t updatesTotal_ = 0;
    std::uint64_t rebuildIndex_ = 0;
    std::uint64_t phaseIndex_ = 0;
    Metrics metrics_;
    std::function<void(const RebuildInfo&)> observer_;
    std::size_t updateEvery_ = 0;
    std::function<void(std::uint64_t)> updateObserver_;
};

} // namespace dynmatch
