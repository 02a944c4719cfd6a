#pragma once

#include <cstddef>

#include "dynmatch/graph.hpp"

namespace dynmatch {

/// Adjacency-matrix-only view of a dense edge set. The static solvers touch
/// the dense side exclusively through this interface, so probe accounting
/// stays honest no matter how the view is backed.
class MatrixAccess {
public:
    virtual ~MatrixAccess() = default;
    virtual std::size_t vertexCount() const = 0;
    virtual bool probe(VertexId u, VertexId v) const = 0;
    /// Exact number of edges behind the view. Costs nothing; used only to
    /// skip sampling on a provably empty dense side.
    virtual std::size_t edgeCountExact() const = 0;
};

class GraphMatrixAccess final : public MatrixAccess {
public:
    explicit GraphMatrixAccess(const DynamicGraph& g) : g_(g) {}
    std::size_t vertexCount() const override { return g_.n(); }
    bool probe(VertexId u, VertexId v) const override { return g_.hasEdge(u, v); }
    std::size_t edgeCountExact() const override { return g_.edgeCount(); }

private:
    const DynamicGraph& g_;
};

/// View of base − minus. Requires minus ⊆ base for edgeCountExact() to be
/// exact; the engine maintains that invariant (every inserted edge goes to
/// both graphs, every deleted edge leaves both).
class DifferenceMatrixAccess final : public MatrixAccess {
public:
    DifferenceMatrixAccess(const DynamicGraph& base, const DynamicGraph& minus)
        : base_(base), minus_(minus) {}
    std::size_t vertexCount() const override { return base_.n(); }
    bool probe(VertexId u, VertexId v) const override {
        return differenceMatrixProbe(base_, minus_, u, v);
    }
    std::size_t edgeCountExact() const override {
        return base_.edgeCount() - minus_.edgeCount();
    }

private:
    const DynamicGraph& base_;
    const DynamicGraph& minus_;
};

} // namespace dynmatch
