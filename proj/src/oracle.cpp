#include "dynmatch/oracle.hpp"

#include <algorithm>
#include <queue>

#include "dynmatch/static_matcher.hpp"

namespace dynmatch {

namespace {

// Edmonds' algorithm with blossom contraction through base[] pointers.
// Follows the classic array formulation: grow an alternating forest from a
// free root, contract odd cycles when two even vertices meet, augment when a
// free vertex is reached.
class Blossom {
public:
    Blossom(std::size_t n, std::span<const Edge> edges) : n_(n), adj_(n) {
        for (const Edge& e : edges) {
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
        for (auto& l : adj_) std::sort(l.begin(), l.end());
        match_.assign(n_, kNone);
    }

    std::uint64_t solve() {
        // greedy warm start cuts the number of augmentation rounds
        for (VertexId v = 0; v < n_; ++v) {
            if (match_[v] != kNone) continue;
            for (VertexId u : adj_[v]) {
                if (match_[u] == kNone) {
                    match_[v] = u;
                    match_[u] = v;
                    break;
                }
            }
        }
        for (VertexId v = 0; v < n_; ++v)
            if (match_[v] == kNone) augmentFrom(v);
        return work_;
    }

    const std::vector<VertexId>& mate() const { return match_; }

private:
    static constexpr VertexId kNone = static_cast<VertexId>(-1);

    VertexId lowestCommonAncestor(VertexId a, VertexId b) {
        std::vector<bool> seen(n_, false);
        for (;;) {
            a = base_[a];
            seen[a] = true;
            if (match_[a] == kNone) break;
            a = parent_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[match_[b]];
        }
    }

    void markPath(VertexId v, VertexId b, VertexId child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = true;
            blossom_[base_[match_[v]]] = true;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    void augmentFrom(VertexId root) {
        parent_.assign(n_, kNone);
        used_.assign(n_, false);
        base_.resize(n_);
        for (VertexId i = 0; i < n_; ++i) base_[i] = i;

        std::queue<VertexId> q;
        q.push(root);
        used_[root] = true;

        VertexId finish = kNone;
        while (!q.empty() && finish == kNone) {
            VertexId v = q.front();
            q.pop();
            for (VertexId to : adj_[v]) {
                ++work_;
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root || (match_[to] != kNone && parent_[match_[to]] != kNone)) {
                    // two even vertices meet: contract the blossom
                    VertexId cur = lowestCommonAncestor(v, to);
                    blossom_.assign(n_, false);
                    markPath(v, cur, to);
                    markPath(to, cur, v);
                    for (VertexId i = 0; i < n_; ++i) {
                        if (blossom_[base_[i]]) {
                            base_[i] = cur;
                            if (!used_[i]) {
                                used_[i] = true;
                                q.push(i);
                            }
                        }
                    }
                } else if (parent_[to] == kNone) {
                    parent_[to] = v;
                    if (match_[to] == kNone) {
                        finish = to;
                        break;
                    }
                    used_[match_[to]] = true;
                    q.push(match_[to]);
                }
            }
        }
        if (finish == kNone) return;
        // flip matched/unmatched along the alternating path back to the root
        VertexId v = finish;
        while (v != kNone) {
            VertexId pv = parent_[v];
            VertexId ppv = match_[pv];
            match_[v] = pv;
            match_[pv] = v;
            v = ppv;
        }
    }

    std::size_t n_;
    std::vector<std::vector<VertexId>> adj_;
    std::vector<VertexId> match_, parent_, base_;
    std::vector<bool> used_, blossom_;
    std::uint64_t work_ = 0;
};

} // namespace

OracleResult exactMatching(std::size_t n, std::span<const Edge> edges) {
    if (n > kOracleVertexCap)
        throw ConfigError("oracle: n=" + std::to_string(n) + " exceeds cap " +
                          std::to_string(kOracleVertexCap));
    for (const Edge& e : edges)
        if (e.v >= n) throw InvalidVertex("oracle: edge endpoint out of range");

    Blossom b(n, edges);
    OracleResult res;
    res.elapsedWork = b.solve();
    const auto& mate = b.mate();
    for (VertexId v = 0; v < n; ++v)
        if (mate[v] != static_cast<VertexId>(-1) && v < mate[v])
            res.matching.add(Edge(v, mate[v]));
    res.size = res.matching.size();
    return res;
}

std::size_t maximumMatchingSize(std::size_t n, std::span<const Edge> edges) {
    return exactMatching(n, edges).size;
}

void MaximalMatchingBaseline::apply(const UpdateEvent& ev) {
    if (ev.kind == UpdateEvent::Kind::Insert) {
        g_.applyInsert(ev.edge);
        if (!m_.isMatched(ev.edge.u) && !m_.isMatched(ev.edge.v)) m_.add(ev.edge);
    } else {
        bool wasMatched = m_.contains(ev.edge);
        g_.applyDelete(ev.edge);
        if (wasMatched) {
            m_.remove(ev.edge);
            repair(ev.edge.u);
            repair(ev.edge.v);
        }
    }
}

void MaximalMatchingBaseline::repair(VertexId v) {
    if (m_.isMatched(v)) return;
    for (VertexId u : g_.neighborsSorted(v)) {
        if (!m_.isMatched(u)) {
            m_.add(Edge(v, u));
            return;
        }
    }
}

RebuildMatchingBaseline::RebuildMatchingBaseline(std::size_t n, std::size_t period)
    : g_(n), period_(period) {
    if (period_ == 0) throw ConfigError("rebuild baseline: period must be >= 1");
}

void RebuildMatchingBaseline::apply(const UpdateEvent& ev) {
    if (ev.kind == UpdateEvent::Kind::Insert) {
        g_.applyInsert(ev.edge);
    } else {
        g_.applyDelete(ev.edge);
        m_.remove(ev.edge);
    }
    if (++sinceRebuild_ % period_ == 0) {
        sinceRebuild_ = 0;
        m_ = greedyMatching(g_.edges());
    }
}

} // namespace dynmatch
