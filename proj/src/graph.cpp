#include "dynmatch/graph.hpp"

#include <algorithm>

namespace dynmatch {

DynamicGraph::DynamicGraph(std::size_t n) : n_(n) {
    if (n > kMaxVertices)
        throw ConfigError("vertex count " + std::to_string(n) + " exceeds cap " +
                          std::to_string(kMaxVertices));
    std::size_t pairs = n_ * (n_ - (n_ > 0 ? 1 : 0)) / 2;
    bits_.assign((pairs + 63) / 64, 0);
    adj_.resize(n_);
    adjIndex_.resize(n_);
}

void DynamicGraph::checkVertex(VertexId v) const {
    if (v >= n_)
        throw InvalidVertex("vertex " + std::to_string(v) + " out of range [0," +
                            std::to_string(n_) + ")");
}

void DynamicGraph::setBit(std::size_t idx, bool on) {
    std::uint64_t mask = std::uint64_t(1) << (idx & 63);
    if (on)
        bits_[idx >> 6] |= mask;
    else
        bits_[idx >> 6] &= ~mask;
}

void DynamicGraph::applyInsert(const Edge& e) {
    checkVertex(e.u);
    checkVertex(e.v);
    if (adjIndex_[e.u].count(e.v)) return;
    setBit(bitIndex(e.u, e.v), true);
    adjIndex_[e.u][e.v] = adj_[e.u].size();
    adj_[e.u].push_back(e.v);
    adjIndex_[e.v][e.u] = adj_[e.v].size();
    adj_[e.v].push_back(e.u);
    ++edgeCount_;
}

void DynamicGraph::applyDelete(const Edge& e) {
    checkVertex(e.u);
    checkVertex(e.v);
    auto it = adjIndex_[e.u].find(e.v);
    if (it == adjIndex_[e.u].end()) return;
    setBit(bitIndex(e.u, e.v), false);
    // swap-remove from both endpoint lists, fixing the moved entry's index
    auto dropFrom = [this](VertexId from, VertexId gone) {
        std::size_t pos = adjIndex_[from][gone];
        VertexId moved = adj_[from].back();
        adj_[from][pos] = moved;
        adj_[from].pop_back();
        adjIndex_[from][moved] = pos;
        adjIndex_[from].erase(gone);
    };
    dropFrom(e.u, e.v);
    dropFrom(e.v, e.u);
    --edgeCount_;
}

bool DynamicGraph::hasEdge(VertexId u, VertexId v) const {
    checkVertex(u);
    checkVertex(v);
    ++matrixProbes_;
    if (u == v) return false;
    return bitAt(bitIndex(u, v));
}

bool DynamicGraph::listHasEdge(VertexId u, VertexId v) const {
    checkVertex(u);
    checkVertex(v);
    ++listReads_;
    if (u == v) return false;
    return adjIndex_[u].count(v) != 0;
}

std::size_t DynamicGraph::degree(VertexId u) const {
    checkVertex(u);
    ++listReads_;
    return adj_[u].size();
}

std::vector<VertexId> DynamicGraph::neighborsSorted(VertexId u) const {
    checkVertex(u);
    listReads_ += adj_[u].size();
    std::vector<VertexId> out = adj_[u];
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Edge> DynamicGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edgeCount_);
    for (VertexId u = 0; u < n_; ++u) {
        listReads_ += adj_[u].size();
        for (VertexId v : adj_[u])
            if (u < v) out.push_back(Edge(u, v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void DynamicGraph::clearEdges() {
    std::fill(bits_.begin(), bits_.end(), 0);
    for (auto& l : adj_) l.clear();
    for (auto& m : adjIndex_) m.clear();
    edgeCount_ = 0;
}

bool differenceMatrixProbe(const DynamicGraph& base, const DynamicGraph& minus,
                           VertexId u, VertexId v) {
    if (base.n() != minus.n())
        throw InvalidArgument("differenceMatrixProbe: vertex sets differ");
    const bool inBase = base.hasEdge(u, v);
    const bool inMinus = minus.hasEdge(u, v);
    return inBase && !inMinus;
}

std::vector<Edge> materializeSparse(const DynamicGraph& added,
                                    const DynamicGraph& certified,
                                    const DynamicGraph& deleted) {
    if (added.n() != certified.n() || added.n() != deleted.n())
        throw InvalidArgument("materializeSparse: vertex sets differ");
    std::vector<Edge> out;
    out.reserve(added.edgeCount() + certified.edgeCount());
    for (const Edge& e : added.edges())
        if (!deleted.listHasEdge(e.u, e.v)) out.push_back(e);
    for (const Edge& e : certified.edges())
        if (!added.listHasEdge(e.u, e.v) && !deleted.listHasEdge(e.u, e.v))
            out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace dynmatch
