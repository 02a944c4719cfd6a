#pragma once

#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "dynmatch/matching.hpp"
#include "dynmatch/matrix_access.hpp"
#include "dynmatch/rng.hpp"

namespace dynmatch {

/// Scans the edges in the given order and keeps every edge whose endpoints
/// are both still free. Deterministic for a fixed order; the result is a
/// maximal matching of the input edge set.
Matching greedyMatching(std::span<const Edge> edges);

/// Analysis-derived bound max(1, n^{1-2δ(i-2)} · ln n) on the induced average
/// degree of a matching produced at sampling iteration i. Used as the proxy d
/// for certificate selection: small proxy = late iteration = sparse
/// neighborhood.
double degreeProxyOf(int returnIteration, double delta, std::size_t n);

struct SamplingResult {
    /// Per-iteration matching of maximum size (earliest on ties), or the
    /// first one to reach δ²n.
    Matching best;
    /// Schedule index that produced `best`; 0 when the candidate set was
    /// empty, the index of the last iteration run when nothing was found.
    int returnIteration = 0;
    /// Union of all per-iteration matchings; maximal in dense[U] once a full
    /// scan has run.
    Matching unionMatching;
    bool scanCompleted = false;
    int iterationsRun = 0;
};

/// Budget-doubling sampled matching inside dense[U].
///
/// Iteration i of the schedule samples b_i = min(⌈n^{2δ(i-1)}⌉, |U'|)
/// vertices per unmatched vertex and matches the first available sampled
/// neighbor. Two desk-scale adjustments to the schedule: iterations are run
/// on the geometric (×2 budget) subsequence so tiny δ does not degenerate
/// into thousands of near-identical passes, and the final iteration
/// ⌈1/(2δ)⌉ always runs at budget |U'| as one deterministic scan, which
/// makes the union matching maximal in dense[U] on every run. The loop stops
/// after any full scan; later iterations could not find anything.
SamplingResult randomSampling(const MatrixAccess& dense,
                              std::span<const VertexId> candidates, double delta,
                              Rng& rng);

/// Edge set with per-vertex sorted neighbor lists and O(1) membership;
/// the list-accessible side of the static solvers.
class EdgeListIndex {
public:
    explicit EdgeListIndex(std::size_t n) : n_(n), adj_(n) {}
    EdgeListIndex(std::size_t n, std::span<const Edge> edges) : EdgeListIndex(n) {
        for (const Edge& e : edges) add(e);
    }

    std::size_t n() const { return n_; }
    std::size_t edgeCount() const { return set_.size(); }
    bool contains(const Edge& e) const { return set_.count(e) != 0; }
    const std::vector<VertexId>& neighbors(VertexId u) const { return adj_[u]; }

    void add(const Edge& e);

private:
    std::size_t n_;
    std::vector<std::vector<VertexId>> adj_;
    std::unordered_set<Edge, EdgeHash> set_;
};

struct CertificateCandidate {
    Matching matching; // best per-iteration matching from the sampling path
    double degreeProxy = 1.0;
    int returnIteration = 0;
    double deltaUsed = 0.0;
    std::size_t greedySizeAtCall = 0; // what the list-side greedy found first
};

struct SolveInducedResult {
    Matching matching;
    std::optional<CertificateCandidate> candidate;
    bool viaSampling = false;
};

/// The induced-subgraph solver: greedy over the list-accessible edges inside
/// U first; if that matching reaches δ²n/8 (ties go to the greedy branch) it
/// is returned with no candidate, otherwise the sampled matching inside
/// dense[U] is returned together with a certificate candidate. The sampling
/// path is skipped outright when the dense side has no edges at all.
SolveInducedResult solveInduced(const MatrixAccess& dense, const EdgeListIndex& lists,
                                std::span<const VertexId> uSorted, double delta,
                                Rng& rng);

enum class ConditionTag { C1, C2 };

struct Certificate {
    Matching matching;
    double degreeProxy = 1.0;
    int returnIteration = 0;
    std::uint64_t rebuildIndex = 0; // provenance, filled by the engine
    std::uint64_t phaseIndex = 0;
    std::optional<double> measuredDegree;
};

struct BoostStats {
    std::size_t repetitions = 0;
    std::size_t solveCalls = 0;
    std::size_t samplingCalls = 0;
    std::size_t augmentingPathsApplied = 0;
};

struct BoostResult {
    Matching matching;
    std::vector<CertificateCandidate> candidates;
    BoostStats stats;
};

/// Layered augmenting-path boosting over the induced solver.
///
/// Parameters derived from ε: per-call δ = ε²/8, layer passes k = 1..⌈1/ε⌉
/// (paths up to length 2⌈1/ε⌉+1) and at most R = ⌈(2/ε)·ln(4/ε)⌉
/// repetitions. Each repetition harvests free-free edges, then for each k
/// draws uniform position labels in {0..2k+1} and grows vertex-disjoint
/// alternating paths layer by layer, extending through matchings returned by
/// solveInduced on (endpoints ∪ next-label candidates) and applying every
/// completed path. Repetitions stop early after a run of profitless rounds;
/// a final fixpoint of free-vertex harvests makes the output maximal.
/// Dense edges discovered by sampling become list-visible to later calls
/// within the same invocation.
BoostResult boostedMatching(const MatrixAccess& dense, const EdgeListIndex& sparse,
                            double epsilon, Rng& rng);

struct MatchOptions {
    bool measureDegree = false; // exhaustively probe dense[V(M_C)] for true d
};

struct SolveOutcome {
    Matching matching;
    std::optional<Certificate> certificate;
    ConditionTag tag = ConditionTag::C1;
    /// True when a C2 candidate existed but was emptied by the sparse filter;
    /// such calls report C1 yet have touched the matrix.
    bool downgraded = false;
    std::vector<CertificateCandidate> candidates;
    BoostStats stats;
};

/// Additive-approximation solver over a dense (matrix access) and sparse
/// (list access) edge split. Returns the boosted matching plus exactly one
/// of: C1 with no certificate, or C2 with the argmin-degree-proxy candidate
/// filtered down by removing sparse edges.
SolveOutcome matchAndCertify(const MatrixAccess& dense, std::span<const Edge> sparseEdges,
                             double epsilon, Rng& rng, const MatchOptions& options = {});

} // namespace dynmatch
