#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynmatch/matching.hpp"
#include "dynmatch/rng.hpp"
#include "dynmatch/stream.hpp"

namespace dynmatch {

/// Ordered list of matchings M_1..M_t over [0, n) with nominal per-matching
/// size r. Candidate for the ordered/plain induced-matching decompositions.
struct OrderedMatchingInstance {
    std::size_t n = 0;
    std::size_t r = 0;
    std::vector<Matching> matchings;

    std::size_t t() const { return matchings.size(); }
};

enum class OrsViolationKind { NotInduced, NotDisjoint, TooSmall };

struct OrsViolation {
    OrsViolationKind kind;
    std::size_t i = 0; // 1-based index of the matching whose property fails
    std::size_t j = 0; // 1-based index supplying the witness edge
    std::optional<Edge> witness;
};

std::string describe(const OrsViolation& v);

/// nullopt = Valid. Scan order (determinism contract): matchings in
/// ascending index; per index first the size bound, then edge-disjointness
/// against earlier matchings, then inducedness — witness edges visited in
/// ascending matching index, then ascending canonical edge order.
/// Inducedness of M_i is checked against M_1 ∪ ... ∪ M_i.
/// Throws MalformedInstance on out-of-range vertices.
std::optional<OrsViolation> verifyORS(const OrderedMatchingInstance& inst);

/// Same scan order, but inducedness of every M_i is checked against the
/// union of all matchings.
std::optional<OrsViolation> verifyRS(const OrderedMatchingInstance& inst);

/// Randomized packer: repeatedly draws a random perfect matching on a random
/// 2r-subset and appends it whenever the instance stays verifier-valid,
/// stopping after `attempts` consecutive rejections. Output is always valid
/// with every matching of size exactly r.
OrderedMatchingInstance greedyORSPack(std::size_t n, std::size_t r,
                                      std::size_t attempts, Rng& rng);

/// max over i != j of |V(M_i) ∩ V(M_j)|; 0 when t < 2.
std::size_t pairwiseOverlapMax(const OrderedMatchingInstance& inst);

/// The adversarial update sequence built from a valid instance: insert the
/// instance's edges matching by matching, then walk i = t..1, each iteration
/// deleting all live singleton-side edges, deleting M_{i+1} (when present)
/// and inserting a perfect matching between the instance vertices unmatched
/// by M_i and the s = n - 2r singleton vertices. After each iteration the
/// graph has a perfect matching on all n + s vertices.
struct HardSequence {
    UpdateStream stream;
    std::vector<std::size_t> iterationBoundaries; // event count after each iteration
    std::size_t instanceVertices = 0;
    std::size_t singletons = 0;
};

HardSequence hardSequenceGen(const OrderedMatchingInstance& inst);

/// Random insert/delete stream; insertBias is the insertion probability
/// (forced moves when the graph is empty or complete). No duplicate inserts,
/// no absent deletes.
UpdateStream randomStreamGen(std::size_t n, std::size_t steps, double insertBias,
                             Rng& rng);

/// Sliding-window churn: inserts random absent edges until windowSize edges
/// are alive, then alternates deleting the oldest edge and inserting.
UpdateStream churnStreamGen(std::size_t n, std::size_t steps, std::size_t windowSize,
                            Rng& rng);

/// Instance text format:
///   n r t
///   matching <i> <size>
///   <u> <v>          (size lines)
/// Blocks in ascending i = 1..t.
OrderedMatchingInstance parseInstance(std::istream& in);
OrderedMatchingInstance loadInstance(const std::string& path);
void writeInstance(std::ostream& out, const OrderedMatchingInstance& inst);
void saveInstance(const std::string& path, const OrderedMatchingInstance& inst);

} // namespace dynmatch
