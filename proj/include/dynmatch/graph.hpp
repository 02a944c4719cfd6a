#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dynmatch/edge.hpp"
#include "dynmatch/errors.hpp"

namespace dynmatch {

/// Fixed-vertex-set dynamic graph kept in two synchronized representations:
/// a packed-bit adjacency matrix (O(1) membership probes) and per-vertex
/// neighbor lists with an associative index (O(1) insert/delete).
///
/// Access is instrumented: every matrix probe bumps matrixProbeCount() and
/// every neighbor-list entry read bumps listReadCount(). Counters are always
/// on and monotone for the lifetime of the object.
class DynamicGraph {
public:
    static constexpr std::size_t kMaxVertices = 20000;

    explicit DynamicGraph(std::size_t n);

    std::size_t n() const { return n_; }
    std::size_t edgeCount() const { return edgeCount_; }

    /// Silent no-op if the edge is already present.
    void applyInsert(const Edge& e);

    /// Silent no-op if the edge is absent.
    void applyDelete(const Edge& e);

    /// Adjacency-matrix membership probe; costs exactly one probe.
    /// hasEdge(v, v) is always false (no self-loop bit is ever set).
    bool hasEdge(VertexId u, VertexId v) const;

    /// Membership via the list-side associative index; costs one list read.
    bool listHasEdge(VertexId u, VertexId v) const;

    /// Degree of u; costs one list read.
    std::size_t degree(VertexId u) const;

    /// Neighbors of u in ascending order; costs deg(u) list reads.
    std::vector<VertexId> neighborsSorted(VertexId u) const;

    /// All edges in ascending canonical order; costs one list read per
    /// adjacency entry visited (2m in total).
    std::vector<Edge> edges() const;

    /// Removes every edge. Counters are preserved.
    void clearEdges();

    std::uint64_t matrixProbeCount() const { return matrixProbes_; }
    std::uint64_t listReadCount() const { return listReads_; }

private:
    std::size_t bitIndex(VertexId u, VertexId v) const {
        // canonical pair index in the strict upper triangle
        std::size_t a = u < v ? u : v;
        std::size_t b = u < v ? v : u;
        return a * (2 * n_ - a - 1) / 2 + (b - a - 1);
    }
    bool bitAt(std::size_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1u; }
    void setBit(std::size_t idx, bool on);
    void checkVertex(VertexId v) const;

    std::size_t n_;
    std::size_t edgeCount_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::vector<VertexId>> adj_;
    std::vector<std::unordered_map<VertexId, std::size_t>> adjIndex_;
    mutable std::uint64_t matrixProbes_ = 0;
    mutable std::uint64_t listReads_ = 0;
};

/// base.hasEdge(u,v) AND NOT minus.hasEdge(u,v). Always issues exactly two
/// matrix probes (one to each graph), matching the cost model of answering a
/// set-difference query from two matrices.
bool differenceMatrixProbe(const DynamicGraph& base, const DynamicGraph& minus,
                           VertexId u, VertexId v);

/// The three phase-scoped edge overlays of the dynamic engine: edges added
/// since the phase started, edges deleted since the phase started, and the
/// accumulated certificate edges.
struct OverlaySet {
    DynamicGraph added;
    DynamicGraph deleted;
    DynamicGraph certified;

    explicit OverlaySet(std::size_t n) : added(n), deleted(n), certified(n) {}

    void clearEdges() {
        added.clearEdges();
        deleted.clearEdges();
        certified.clearEdges();
    }
};

/// Deduplicated edge list of (added ∪ certified) \ deleted, in ascending
/// order. Work is proportional to the total overlay size.
std::vector<Edge> materializeSparse(const DynamicGraph& added,
                                    const DynamicGraph& certified,
                                    const DynamicGraph& deleted);

} // namespace dynmatch
