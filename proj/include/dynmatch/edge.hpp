#pragma once

#include <cstdint>
#include <functional>
#include <ostream>

#include "dynmatch/errors.hpp"

namespace dynmatch {

using VertexId = std::uint32_t;

/// Undirected edge stored in canonical order u < v. Self-loops are rejected
/// at construction.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    Edge() = default;
    Edge(VertexId a, VertexId b) {
        if (a == b)
            throw InvalidEdge("self-loop (" + std::to_string(a) + "," + std::to_string(b) + ")");
        u = a < b ? a : b;
        v = a < b ? b : a;
    }

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Edge& e) {
    return os << "(" << e.u << "," << e.v << ")";
}

struct EdgeHash {
    std::size_t operator()(const Edge& e) const noexcept {
        std::uint64_t k = (std::uint64_t(e.u) << 32) | e.v;
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return static_cast<std::size_t>(k);
    }
};

} // namespace dynmatch
