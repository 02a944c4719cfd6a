#include "dynmatch/sparsifier.hpp"

#include <algorithm>
#include <cmath>

namespace dynmatch {

ContractionMap ContractionMap::random(std::size_t n, std::size_t k, std::uint64_t seed) {
    ContractionMap m;
    m.buckets = std::min(n, k);
    m.seed = seed;
    m.bucketOf.resize(n);
    if (m.buckets >= n) {
        for (std::size_t v = 0; v < n; ++v) m.bucketOf[v] = VertexId(v);
        m.buckets = n;
    } else {
        Rng rng(seed);
        for (std::size_t v = 0; v < n; ++v)
            m.bucketOf[v] = VertexId(rng.below(m.buckets));
    }
    return m;
}

std::optional<Edge> contractEdge(const ContractionMap& map, const Edge& e) {
    if (e.v >= map.bucketOf.size())
        throw InvalidVertex("contractEdge: endpoint out of range");
    VertexId bu = map.bucketOf[e.u];
    VertexId bv = map.bucketOf[e.v];
    if (bu == bv) return std::nullopt;
    return Edge(bu, bv);
}

namespace {

EngineConfig instanceConfig(std::size_t buckets, double epsilon, std::uint64_t seed) {
    EngineConfig c;
    c.n = buckets;
    c.epsilon = epsilon * epsilon / 32.0;
    c.rootSeed = seed;
    return c;
}

} // namespace

MatchingWrapper::MatchingWrapper(std::size_t n, double epsilon, std::uint64_t rootSeed)
    : n_(n), epsilon_(epsilon) {
    if (n < 2) throw ConfigError("wrapper: n must be >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ConfigError("wrapper: epsilon must be in (0,1)");
    Rng seeder(rootSeed);
    for (std::size_t guess = 1; guess <= n / 2; guess *= 2) {
        std::size_t k = std::min(
            n, std::size_t(std::ceil(16.0 * double(guess) / epsilon)));
        std::uint64_t mapSeed = seeder.child(2 * instances_.size()).next();
        std::uint64_t engineSeed = seeder.child(2 * instances_.size() + 1).next();
        instances_.push_back(Instance{
            guess, ContractionMap::random(n, k, mapSeed),
            DynamicMatchingEngine(instanceConfig(std::min(n, k), epsilon, engineSeed)),
            {}});
    }
}

void MatchingWrapper::applyUpdate(const UpdateEvent& ev) {
    for (Instance& inst : instances_) {
        std::optional<Edge> ce = contractEdge(inst.map, ev.edge);
        if (!ce) continue;
        if (ev.kind == UpdateEvent::Kind::Insert) {
            auto& pre = inst.preimages[*ce];
            bool first = pre.empty();
            pre.insert(ev.edge);
            if (first) inst.engine.applyUpdate(UpdateEvent::insert(*ce));
        } else {
            auto it = inst.preimages.find(*ce);
            if (it == inst.preimages.end()) continue;
            it->second.erase(ev.edge);
            if (it->second.empty()) {
                inst.preimages.erase(it);
                inst.engine.applyUpdate(UpdateEvent::remove(*ce));
            }
        }
    }
}

std::size_t MatchingWrapper::activeIndex() const {
    std::size_t best = instances_.size();
    for (std::size_t i = 0; i < instances_.size(); ++i) {
        std::size_t size = instances_[i].engine.currentMatching().size();
        if (2 * size >= instances_[i].guess) best = i; // largest qualifying guess
    }
    if (best != instances_.size()) return best;
    // nothing qualifies (tiny or empty graph): take the largest report
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < instances_.size(); ++i)
        if (instances_[i].engine.currentMatching().size() >
            instances_[argmax].engine.currentMatching().size())
            argmax = i;
    return argmax;
}

Matching MatchingWrapper::lift(const Instance& inst) const {
    Matching out;
    for (const Edge& be : inst.engine.currentMatching().edges()) {
        auto it = inst.preimages.find(be);
        if (it == inst.preimages.end() || it->second.empty())
            throw Error("wrapper: matched bucket edge has no surviving preimage");
        out.add(*it->second.begin());
    }
    return out;
}

Matching MatchingWrapper::currentMatching() const {
    if (instances_.empty()) return {};
    return lift(instances_[activeIndex()]);
}

std::vector<InstanceReport> MatchingWrapper::instanceReports() const {
    std::vector<InstanceReport> out;
    std::size_t active = instances_.empty() ? 0 : activeIndex();
    for (std::size_t i = 0; i < instances_.size(); ++i) {
        out.push_back(InstanceReport{instances_[i].guess, instances_[i].map.buckets,
                                     instances_[i].engine.currentMatching().size(),
                                     i == active});
    }
    return out;
}

std::uint64_t MatchingWrapper::matrixProbeCount() const {
    std::uint64_t total = 0;
    for (const Instance& inst : instances_)
        total += inst.engine.metricsSnapshot().matrixProbes;
    return total;
}

std::uint64_t MatchingWrapper::listReadCount() const {
    std::uint64_t total = 0;
    for (const Instance& inst : instances_)
        total += inst.engine.metricsSnapshot().listReads;
    return total;
}

std::uint64_t MatchingWrapper::rebuildCount() const {
    std::uint64_t total = 0;
    for (const Instance& inst : instances_) total += inst.engine.rebuildIndex();
    return total;
}

} // namespace dynmatch
