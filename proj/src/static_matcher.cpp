#include "dynmatch/static_matcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dynmatch/errors.hpp"
#include "dynmatch/oracle.hpp"

namespace dynmatch {

Matching greedyMatching(std::span<const Edge> edges) {
    Matching m;
    for (const Edge& e : edges)
        if (!m.isMatched(e.u) && !m.isMatched(e.v)) m.add(e);
    return m;
}

double degreeProxyOf(int returnIteration, double delta, std::size_t n) {
    if (returnIteration < 1) throw InvalidArgument("degreeProxyOf: iteration must be >= 1");
    if (n < 1) throw InvalidArgument("degreeProxyOf: n must be >= 1");
    double exponent = 1.0 - 2.0 * delta * double(returnIteration - 2);
    double value = std::pow(double(n), exponent) * std::log(double(n));
    return std::max(1.0, value);
}

void EdgeListIndex::add(const Edge& e) {
    if (e.v >= n_) throw InvalidVertex("edge endpoint out of range");
    if (!set_.insert(e).second) return;
    auto& lu = adj_[e.u];
    lu.insert(std::lower_bound(lu.begin(), lu.end(), e.v), e.v);
    auto& lv = adj_[e.v];
    lv.insert(std::lower_bound(lv.begin(), lv.end(), e.u), e.u);
}

SamplingResult randomSampling(const MatrixAccess& dense,
                              std::span<const VertexId> candidates, double delta,
                              Rng& rng) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw InvalidArgument("randomSampling: delta must be in (0,1]");
    SamplingResult res;
    if (candidates.size() < 2) return res;

    const std::size_t n = dense.vertexCount();
    std::vector<VertexId> sortedU(candidates.begin(), candidates.end());
    std::sort(sortedU.begin(), sortedU.end());
    sortedU.erase(std::unique(sortedU.begin(), sortedU.end()), sortedU.end());
    for (VertexId v : sortedU)
        if (v >= n) throw InvalidVertex("randomSampling: vertex out of range");

    // alive pool supporting O(1) uniform draws and O(1) removal
    std::vector<VertexId> pool = sortedU;
    constexpr std::size_t kGone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> poolPos(n, kGone);
    for (std::size_t i = 0; i < pool.size(); ++i) poolPos[pool[i]] = i;
    auto alive = [&](VertexId v) { return poolPos[v] != kGone; };
    auto removeVertex = [&](VertexId v) {
        std::size_t pos = poolPos[v];
        VertexId last = pool.back();
        pool[pos] = last;
        poolPos[last] = pos;
        pool.pop_back();
        poolPos[v] = kGone;
    };

    const double logN = std::log(double(n));
    const int lastIter = int(std::ceil(1.0 / (2.0 * delta)));
    const double sizeGoal = delta * delta * double(n);

    std::size_t bestSize = 0;
    bool haveBest = false;
    int iter = 1;
    while (iter <= lastIter && pool.size() >= 2) {
        std::size_t budget;
        if (iter == lastIter) {
            budget = pool.size();
        } else {
            double sched = std::pow(double(n), 2.0 * delta * double(iter - 1));
            budget = sched >= double(pool.size())
                         ? pool.size()
                         : static_cast<std::size_t>(std::ceil(sched));
            if (budget == 0) budget = 1;
        }
        const bool scanMode = budget >= pool.size();

        Matching mi;
        for (VertexId v : sortedU) {
            if (!alive(v)) continue;
            VertexId mate = 0;
            bool found = false;
            if (scanMode) {
                for (VertexId u : sortedU) {
                    if (u == v || !alive(u)) continue;
                    if (dense.probe(v, u)) {
                        mate = u;
                        found = true;
                        break;
                    }
                }
            } else {
                for (std::size_t s = 0; s < budget && !found; ++s) {
                    VertexId u = pool[rng.below(pool.size())];
                    if (u == v) continue;
                    if (dense.probe(v, u)) {
                        mate = u;
                        found = true;
                    }
                }
            }
            if (found) {
                mi.add(Edge(v, mate));
                removeVertex(v);
                removeVertex(mate);
            }
        }

        ++res.iterationsRun;
        for (const Edge& e : mi.edges())
            if (!res.unionMatching.isMatched(e.u) && !res.unionMatching.isMatched(e.v))
                res.unionMatching.add(e);
        if (scanMode) res.scanCompleted = true;

        if (double(mi.size()) >= sizeGoal) {
            res.best = std::move(mi);
            res.returnIteration = iter;
            return res;
        }
        if (!haveBest || mi.size() > bestSize) {
            bestSize = mi.size();
            res.best = std::move(mi);
            res.returnIteration = iter;
            haveBest = true;
        }
        if (scanMode) break; // the union is now maximal; nothing left to find

        // advance along the geometric subsequence of the budget schedule
        double target = 2.0 * double(budget);
        int nextIter =
            int(std::ceil(1.0 + std::log(target) / (2.0 * delta * logN) - 1e-12));
        iter = std::min(std::max(nextIter, iter + 1), lastIter);
    }
    return res;
}

namespace {

std::vector<Edge> restrictedSparseEdges(const EdgeListIndex& lists,
                                        std::span<const VertexId> uSorted,
                                        const std::vector<char>& inU) {
    std::vector<Edge> out;
    for (VertexId u : uSorted)
        for (VertexId v : lists.neighbors(u))
            if (v > u && inU[v]) out.push_back(Edge(u, v));
    return out; // ascending canonical order by construction
}

} // namespace

SolveInducedResult solveInduced(const MatrixAccess& dense, const EdgeListIndex& lists,
                                std::span<const VertexId> uSorted, double delta,
                                Rng& rng) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw InvalidArgument("solveInduced: delta must be in (0,1]");
    SolveInducedResult out;
    if (uSorted.size() < 2) return out;

    const std::size_t n = dense.vertexCount();
    std::vector<char> inU(n, 0);
    for (VertexId v : uSorted) {
        if (v >= n) throw InvalidVertex("solveInduced: vertex out of range");
        inU[v] = 1;
    }

    Matching greedy = greedyMatching(restrictedSparseEdges(lists, uSorted, inU));
    const double threshold = delta * delta * double(n) / 8.0;
    if (double(greedy.size()) >= threshold) {
        out.matching = std::move(greedy);
        return out;
    }
    if (dense.edgeCountExact() == 0) {
        out.matching = std::move(greedy);
        return out;
    }

    SamplingResult s = randomSampling(dense, uSorted, delta, rng);
    out.viaSampling = true;
    out.candidate = CertificateCandidate{
        s.best, degreeProxyOf(std::max(s.returnIteration, 1), delta, n),
        std::max(s.returnIteration, 1), delta, greedy.size()};
    out.matching = std::move(s.unionMatching);
    // top up with list-side edges that still fit
    for (const Edge& e : greedy.edges())
        if (!out.matching.isMatched(e.u) && !out.matching.isMatched(e.v))
            out.matching.add(e);
    return out;
}

namespace {

struct BoostParams {
    int layerPassCap;
    int repetitionCap;
    int staleLimit;
    double delta;
};

BoostParams boostParamsFor(double epsilon, std::size_t n) {
    BoostParams p;
    // an augmenting path cannot have more than n vertices, so passes beyond
    // k = n/2 are dead weight no matter how small epsilon gets
    p.layerPassCap =
        int(std::min<double>(std::ceil(1.0 / epsilon), double(n) / 2.0 + 1.0));
    p.repetitionCap = int(std::min(
        std::ceil((2.0 / epsilon) * std::log(4.0 / epsilon)), 1e9));
    p.delta = epsilon * epsilon / 8.0;
    // small instances are cheap enough to run many repetitions; the stale
    // window is clamped so sub-constant epsilon cannot stall a rebuild
    int stale = n <= 128 ? p.repetitionCap : std::max(8, p.repetitionCap / 4);
    p.staleLimit = std::clamp(stale, 3, 32);
    return p;
}

class Booster {
public:
    Booster(const MatrixAccess& dense, const EdgeListIndex& sparse, double epsilon,
            Rng& rng)
        : dense_(dense), session_(sparse), rng_(rng),
          n_(dense.vertexCount()), params_(boostParamsFor(epsilon, n_)) {}

    BoostResult run() {
        if (dense_.edgeCountExact() == 0) {
            // nothing to discover by probing: the session lists already see
            // the whole graph, so the polish alone is exact here
            while (harvestFreeEdges()) {}
            polishOnKnownEdges();
            result_.matching = std::move(m_);
            return std::move(result_);
        }
        int stale = 0;
        for (int rep = 0; rep < params_.repetitionCap; ++rep) {
            ++result_.stats.repetitions;
            bool progress = harvestFreeEdges();
            while (lengthThreeSweep()) progress = true;
            for (int k = 1; k <= params_.layerPassCap; ++k) {
                if (freeCount() < 2) break;
                // a length-(2k+1) path needs k matched edges and 2k+2 vertices
                if (std::size_t(k) > m_.size() || std::size_t(2 * k + 2) > n_) break;
                if (layeredPass(k)) progress = true;
            }
            if (progress) {
                stale = 0;
            } else if (++stale >= params_.staleLimit) {
                break;
            }
        }
        while (harvestFreeEdges() || lengthThreeSweep()) {} // maximality + 3-aug-free fixpoint
        polishOnKnownEdges();
        result_.matching = std::move(m_);
        return std::move(result_);
    }

private:
    std::size_t freeCount() const { return n_ - 2 * m_.size(); }

    std::vector<VertexId> freeVertices() const {
        std::vector<VertexId> out;
        out.reserve(freeCount());
        for (VertexId v = 0; v < n_; ++v)
            if (!m_.isMatched(v)) out.push_back(v);
        return out;
    }

    SolveInducedResult solveOn(std::span<const VertexId> u) {
        ++result_.stats.solveCalls;
        SolveInducedResult res = solveInduced(dense_, session_, u, params_.delta, rng_);
        if (res.candidate) result_.candidates.push_back(*res.candidate);
        if (res.viaSampling) {
            ++result_.stats.samplingCalls;
            // verified dense edges become list-visible for the rest of the call
            for (const Edge& e : res.matching.edges()) session_.add(e);
            if (res.candidate)
                for (const Edge& e : res.candidate->matching.edges()) session_.add(e);
        }
        return res;
    }

    bool harvestFreeEdges() {
        // a barren harvest stays barren until the matching or session changes
        if (barrenStamp_ == stateStamp()) return false;
        if (freeCount() < 2) return false;
        std::vector<VertexId> free = freeVertices();
        SolveInducedResult res = solveOn(free);
        bool any = false;
        for (const Edge& e : res.matching.edges()) {
            if (!m_.isMatched(e.u) && !m_.isMatched(e.v)) {
                m_.add(e);
                any = true;
            }
        }
        if (!any) barrenStamp_ = stateStamp();
        return any;
    }

    std::uint64_t stateStamp() const {
        return (std::uint64_t(m_.size()) << 32) ^ session_.edgeCount();
    }

    // The session lists hold every edge this call has verified (sparse input
    // plus probed-true dense pairs). Extracting the maximum matching of that
    // known subgraph costs list access only, so a C1 call still makes zero
    // matrix probes. Anything the layer passes assembled is subsumed.
    void polishOnKnownEdges() {
        if (n_ > kOracleVertexCap) return;
        std::vector<Edge> known;
        known.reserve(session_.edgeCount());
        for (VertexId u = 0; u < n_; ++u)
            for (VertexId v : session_.neighbors(u))
                if (u < v) known.push_back(Edge(u, v));
        if (known.empty()) return;
        OracleResult exact = exactMatching(n_, known);
        if (exact.size > m_.size()) m_ = std::move(exact.matching);
    }

    // Eliminates every length-3 augmenting path over the known edges, and —
    // once the call has already gone down the sampling path — over the dense
    // side too: the dense side is immutable for the lifetime of the call, so
    // each free-matched pair is probed at most once and discovered edges land
    // in the session lists. Probing is gated on a prior sampling call so that
    // calls served entirely by list access stay probe-free (they report C1).
    // The gate costs nothing: the harvest fixpoint falls through to sampling
    // exactly when list-side greedy is exhausted and the dense side is
    // non-empty, and with fewer than two free vertices no augmenting path
    // exists at all.
    bool lengthThreeSweep() {
        std::vector<VertexId> free = freeVertices();
        if (free.empty()) return false;
        std::vector<VertexId> matched = m_.matchedVertices();
        if (!matched.empty() && dense_.edgeCountExact() > 0 &&
            result_.stats.samplingCalls > 0) {
            for (VertexId f : free) {
                for (VertexId v : matched) {
                    std::uint64_t key = (std::uint64_t(std::min(f, v)) << 32) |
                                        std::uint64_t(std::max(f, v));
                    if (!probedPairs_.insert(key).second) continue;
                    if (dense_.probe(f, v)) session_.add(Edge(f, v));
                }
            }
        }
        auto freeSessionNeighbors = [&](VertexId v) {
            std::vector<VertexId> out;
            for (VertexId w : session_.neighbors(v))
                if (!m_.isMatched(w)) out.push_back(w);
            return out;
        };
        bool any = false;
        for (const Edge& me : m_.edges()) {
            if (!m_.contains(me)) continue; // rewired by an earlier augmentation
            std::vector<VertexId> fu = freeSessionNeighbors(me.u);
            if (fu.empty()) continue;
            std::vector<VertexId> fv = freeSessionNeighbors(me.v);
            if (fv.empty()) continue;
            VertexId f1 = fu[0];
            VertexId f2 = fv[0] != f1 ? fv[0] : (fv.size() > 1 ? fv[1] : f1);
            if (f2 == f1) {
                if (fu.size() > 1) {
                    f1 = fu[1];
                    f2 = fv[0];
                } else {
                    continue; // both sides reach only the same free vertex
                }
            }
            m_.remove(me);
            m_.add(Edge(f1, me.u));
            m_.add(Edge(me.v, f2));
            ++result_.stats.augmentingPathsApplied;
            any = true;
        }
        return any;
    }

    bool layeredPass(int k) {
        // when the dense side has no edges at all, vertices without a
        // list-visible edge can never join a path; skip them wholesale
        std::vector<VertexId> universe;
        universe.reserve(n_);
        const bool denseEmpty = dense_.edgeCountExact() == 0;
        for (VertexId v = 0; v < n_; ++v) {
            if (denseEmpty && session_.neighbors(v).empty() && !m_.isMatched(v))
                continue;
            universe.push_back(v);
        }
        if (universe.size() < std::size_t(2 * k + 2)) return false;

        const int positions = 2 * k + 2; // position labels 0..2k+1
        std::vector<int> label(n_, -1);
        for (VertexId v : universe)
            label[v] = int(rng_.below(std::uint64_t(positions)));

        std::vector<std::vector<VertexId>> paths;
        std::vector<char> onPath(n_, 0);
        for (VertexId v : universe) {
            if (!m_.isMatched(v) && label[v] == 0) {
                paths.push_back({v});
                onPath[v] = 1;
            }
        }
        if (paths.empty()) return false;

        std::vector<char> inA(n_, 0), inB(n_, 0);
        for (int pos = 0; pos + 1 <= 2 * k + 1; pos += 2) {
            const int nextLabel = pos + 1;
            const bool finalStep = nextLabel == 2 * k + 1;

            std::vector<VertexId> ends;
            std::vector<std::size_t> ownerOf(n_, 0);
            for (std::size_t i = 0; i < paths.size(); ++i) {
                VertexId e2 = paths[i].back();
                ends.push_back(e2);
                ownerOf[e2] = i;
            }
            std::vector<VertexId> candidatesB;
            for (VertexId v : universe) {
                if (onPath[v] || label[v] != nextLabel) continue;
                if (finalStep) {
                    if (!m_.isMatched(v)) candidatesB.push_back(v);
                } else {
                    auto partner = m_.partnerOf(v);
                    if (partner && !onPath[*partner] && label[*partner] == nextLabel + 1)
                        candidatesB.push_back(v);
                }
            }
            if (candidatesB.empty()) return false;

            std::vector<VertexId> u;
            u.reserve(ends.size() + candidatesB.size());
            for (VertexId v : ends) {
                u.push_back(v);
                inA[v] = 1;
            }
            for (VertexId v : candidatesB) {
                u.push_back(v);
                inB[v] = 1;
            }
            std::sort(u.begin(), u.end());

            SolveInducedResult res = solveOn(u);

            std::vector<std::vector<VertexId>> extended;
            for (const Edge& e : res.matching.edges()) {
                VertexId a, b;
                if (inA[e.u] && inB[e.v]) {
                    a = e.u;
                    b = e.v;
                } else if (inA[e.v] && inB[e.u]) {
                    a = e.v;
                    b = e.u;
                } else {
                    continue; // not a cross edge
                }
                auto& path = paths[ownerOf[a]];
                path.push_back(b);
                onPath[b] = 1;
                if (!finalStep) {
                    VertexId pb = *m_.partnerOf(b);
                    path.push_back(pb);
                    onPath[pb] = 1;
                }
                extended.push_back(std::move(path));
            }
            for (VertexId v : ends) inA[v] = 0;
            for (VertexId v : candidatesB) inB[v] = 0;
            paths = std::move(extended);
            if (paths.empty()) return false;
        }

        bool applied = false;
        for (const auto& p : paths) {
            if (p.size() != std::size_t(2 * k + 2)) continue;
            for (int i = 1; i + 1 <= 2 * k; i += 2) m_.remove(Edge(p[i], p[i + 1]));
            for (int i = 0; i <= 2 * k; i += 2) m_.add(Edge(p[i], p[i + 1]));
            ++result_.stats.augmentingPathsApplied;
            applied = true;
        }
        return applied;
    }

    const MatrixAccess& dense_;
    EdgeListIndex session_;
    Rng& rng_;
    std::size_t n_;
    BoostParams params_;
    Matching m_;
    BoostResult result_;
    std::uint64_t barrenStamp_ = std::uint64_t(-1);
    std::unordered_set<std::uint64_t> probedPairs_;
};

} // namespace

BoostResult boostedMatching(const MatrixAccess& dense, const EdgeListIndex& sparse,
                            double epsilon, Rng& rng) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ConfigError("boostedMatching: epsilon must be in (0,1)");
    Booster b(dense, sparse, epsilon, rng);
    return b.run();
}

namespace {

double measureAverageDegree(const MatrixAccess& dense, const Matching& m) {
    std::vector<VertexId> verts = m.matchedVertices();
    std::uint64_t inside = 0;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (dense.probe(verts[i], verts[j])) ++inside;
    return m.size() == 0 ? 0.0 : double(inside) / double(m.size());
}

} // namespace

SolveOutcome matchAndCertify(const MatrixAccess& dense, std::span<const Edge> sparseEdges,
                             double epsilon, Rng& rng, const MatchOptions& options) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ConfigError("matchAndCertify: epsilon must be in (0,1)");
    EdgeListIndex sparse(dense.vertexCount(), sparseEdges);
    BoostResult boost = boostedMatching(dense, sparse, epsilon, rng);

    SolveOutcome out;
    out.matching = std::move(boost.matching);
    out.candidates = std::move(boost.candidates);
    out.stats = boost.stats;
    if (out.candidates.empty()) return out; // C1, never touched the matrix

    std::size_t pick = 0;
    for (std::size_t i = 1; i < out.candidates.size(); ++i)
        if (out.candidates[i].degreeProxy < out.candidates[pick].degreeProxy) pick = i;

    Matching filtered;
    for (const Edge& e : out.candidates[pick].matching.edges())
        if (!sparse.contains(e)) filtered.add(e);
    if (filtered.empty()) {
        out.downgraded = true;
        return out; // reported as C1; H_cert gains nothing
    }

    Certificate cert;
    cert.matching = std::move(filtered);
    cert.degreeProxy = out.candidates[pick].degreeProxy;
    cert.returnIteration = out.candidates[pick].returnIteration;
    if (options.measureDegree)
        cert.measuredDegree = measureAverageDegree(dense, cert.matching);
    out.certificate = std::move(cert);
    out.tag = ConditionTag::C2;
    return out;
}

} // namespace dynmatch
