#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/matching.hpp"
#include "dynmatch/stream.hpp"

namespace dynmatch {

struct OracleResult {
    std::size_t size = 0;
    Matching matching;
    std::uint64_t elapsedWork = 0; // algorithm step counter, machine independent
};

constexpr std::size_t kOracleVertexCap = 5000;

/// Exact maximum matching on a general graph via blossom contraction.
/// O(V * E) augmentation rounds after a greedy warm start; ample at desk
/// scale. Throws ConfigError above the vertex cap.
OracleResult exactMatching(std::size_t n, std::span<const Edge> edges);
std::size_t maximumMatchingSize(std::size_t n, std::span<const Edge> edges);

/// Greedy maximal matching maintained under updates: inserts match two free
/// endpoints immediately; deleting a matched edge triggers a repair scan of
/// the two freed vertices' neighbor lists. The matching is maximal after
/// every update.
class MaximalMatchingBaseline {
public:
    explicit MaximalMatchingBaseline(std::size_t n) : g_(n) {}

    void apply(const UpdateEvent& ev);
    const Matching& matching() const { return m_; }
    const DynamicGraph& graph() const { return g_; }

private:
    void repair(VertexId v);

    DynamicGraph g_;
    Matching m_;
};

/// Periodic from-scratch greedy: between rebuilds inserts are ignored and
/// deletions only prune the matching; every `period` updates the matching is
/// recomputed by a greedy pass over the full edge list.
class RebuildMatchingBaseline {
public:
    RebuildMatchingBaseline(std::size_t n, std::size_t period);

    void apply(const UpdateEvent& ev);
    const Matching& matching() const { return m_; }
    const DynamicGraph& graph() const { return g_; }

private:
    DynamicGraph g_;
    Matching m_;
    std::size_t period_;
    std::size_t sinceRebuild_ = 0;
};

} // namespace dynmatch
