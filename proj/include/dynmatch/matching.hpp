#pragma once

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dynmatch/edge.hpp"

namespace dynmatch {

/// Vertex-disjoint edge set with O(1) partner lookup.
class Matching {
public:
    std::size_t size() const { return partner_.size() / 2; }
    bool empty() const { return partner_.empty(); }

    bool isMatched(VertexId v) const { return partner_.count(v) != 0; }

    std::optional<VertexId> partnerOf(VertexId v) const {
        auto it = partner_.find(v);
        if (it == partner_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const Edge& e) const {
        auto it = partner_.find(e.u);
        return it != partner_.end() && it->second == e.v;
    }

    /// Adds an edge; both endpoints must be free.
    void add(const Edge& e) {
        if (isMatched(e.u) || isMatched(e.v))
            throw InvalidArgument("matching: endpoint already matched");
        partner_[e.u] = e.v;
        partner_[e.v] = e.u;
    }

    /// Removes exactly this edge if present; returns whether it was there.
    bool remove(const Edge& e) {
        if (!contains(e)) return false;
        partner_.erase(e.u);
        partner_.erase(e.v);
        return true;
    }

    void clear() { partner_.clear(); }

    /// Canonical edges in ascending order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(size());
        for (const auto& [u, v] : partner_)
            if (u < v) out.push_back(Edge(u, v));
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<VertexId> matchedVertices() const {
        std::vector<VertexId> out;
        out.reserve(partner_.size());
        for (const auto& [u, v] : partner_) out.push_back(u);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::unordered_map<VertexId, VertexId> partner_;
};

} // namespace dynmatch
