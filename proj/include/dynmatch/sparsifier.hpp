#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dynmatch/engine.hpp"

namespace dynmatch {

/// Seeded assignment of original vertices to k buckets. k >= n yields the
/// identity map (a random map would only add collisions).
struct ContractionMap {
    std::vector<VertexId> bucketOf;
    std::size_t buckets = 0;
    std::uint64_t seed = 0;

    static ContractionMap random(std::size_t n, std::size_t k, std::uint64_t seed);
};

/// Bucket-level image of e, or nothing when both endpoints collide.
std::optional<Edge> contractEdge(const ContractionMap& map, const Edge& e);

struct InstanceReport {
    std::size_t guess = 0; // μ̂
    std::size_t buckets = 0;
    std::size_t reportedSize = 0;
    bool active = false;
};

/// Guess-ladder wrapper turning the engine's additive guarantee into a
/// multiplicative one via vertex sparsification.
///
/// One instance per matching-size guess μ̂ ∈ {1, 2, 4, ..., <= n/2}, each a
/// dynamic engine on k = min(n, ⌈16 μ̂ / ε⌉) buckets with additive parameter
/// ε²/32, fed the contracted update stream. Bucket multi-edges are reference
/// counted; the reported matching of the designated instance lifts back to
/// original edges through the lowest surviving preimage of each bucket edge.
class MatchingWrapper {
public:
    MatchingWrapper(std::size_t n, double epsilon, std::uint64_t rootSeed);

    void applyUpdate(const UpdateEvent& ev);

    /// Lifted matching of the active instance: the largest guess whose
    /// instance reports a matching of size >= μ̂/2, falling back to the
    /// instance with the largest reported matching when none qualifies.
    Matching currentMatching() const;

    std::vector<InstanceReport> instanceReports() const;
    std::size_t instanceCount() const { return instances_.size(); }
    std::uint64_t matrixProbeCount() const;
    std::uint64_t listReadCount() const;
    std::uint64_t rebuildCount() const;

private:
    struct Instance {
        std::size_t guess;
        ContractionMap map;
        DynamicMatchingEngine engine;
        // bucket edge -> surviving original preimages (ordered: begin() lifts)
        std::map<Edge, std::set<Edge>> preimages;
    };

    std::size_t activeIndex() const;
    Matching lift(const Instance& inst) const;

    std::size_t n_;
    double epsilon_;
    std::vector<Instance> instances_;
};

} // namespace dynmatch
