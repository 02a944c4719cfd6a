#include "dynmatch/ors.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "dynmatch/errors.hpp"

namespace dynmatch {

namespace {

void checkWellFormed(const OrderedMatchingInstance& inst) {
    for (const Matching& m : inst.matchings)
        for (const Edge& e : m.edges())
            if (e.v >= inst.n)
                throw MalformedInstance("matching edge endpoint out of range");
}

std::optional<OrsViolation> verifyImpl(const OrderedMatchingInstance& inst,
                                       bool againstWholeUnion) {
    checkWellFormed(inst);
    const std::size_t t = inst.t();
    std::vector<std::vector<Edge>> sorted(t);
    for (std::size_t i = 0; i < t; ++i) sorted[i] = inst.matchings[i].edges();

    std::unordered_set<Edge, EdgeHash> seen;
    for (std::size_t i = 0; i < t; ++i) {
        const Matching& mi = inst.matchings[i];
        if (mi.size() < inst.r) {
            OrsViolation v{OrsViolationKind::TooSmall, i + 1, i + 1, std::nullopt};
            if (!sorted[i].empty()) v.witness = sorted[i].front();
            return v;
        }
        for (const Edge& e : sorted[i]) {
            if (seen.count(e)) {
                // locate the earlier owner for the report
                std::size_t owner = 0;
                for (std::size_t j = 0; j < i; ++j)
                    if (inst.matchings[j].contains(e)) {
                        owner = j + 1;
                        break;
                    }
                return OrsViolation{OrsViolationKind::NotDisjoint, i + 1, owner, e};
            }
        }
        const std::size_t inducedLimit = againstWholeUnion ? t : i + 1;
        for (std::size_t j = 0; j < inducedLimit; ++j) {
            if (j == i) continue;
            for (const Edge& e : sorted[j]) {
                if (mi.contains(e)) continue;
                if (mi.isMatched(e.u) && mi.isMatched(e.v))
                    return OrsViolation{OrsViolationKind::NotInduced, i + 1, j + 1, e};
            }
        }
        for (const Edge& e : sorted[i]) seen.insert(e);
    }
    return std::nullopt;
}

} // namespace

std::string describe(const OrsViolation& v) {
    std::ostringstream os;
    switch (v.kind) {
    case OrsViolationKind::TooSmall:
        os << "matching " << v.i << " smaller than r";
        break;
    case OrsViolationKind::NotDisjoint:
        os << "matching " << v.i << " shares an edge with matching " << v.j;
        break;
    case OrsViolationKind::NotInduced:
        os << "matching " << v.i << " not induced: edge of matching " << v.j
           << " lands inside it";
        break;
    }
    if (v.witness) os << ", witness " << *v.witness;
    return os.str();
}

std::optional<OrsViolation> verifyORS(const OrderedMatchingInstance& inst) {
    return verifyImpl(inst, false);
}

std::optional<OrsViolation> verifyRS(const OrderedMatchingInstance& inst) {
    return verifyImpl(inst, true);
}

OrderedMatchingInstance greedyORSPack(std::size_t n, std::size_t r,
                                      std::size_t attempts, Rng& rng) {
    if (r < 1) throw InvalidArgument("greedyORSPack: r must be >= 1");
    if (2 * r > n) throw InvalidArgument("greedyORSPack: need 2r <= n");

    OrderedMatchingInstance inst;
    inst.n = n;
    inst.r = r;

    std::unordered_set<Edge, EdgeHash> unionEdges;
    std::vector<Edge> unionList;
    std::vector<VertexId> verts(n);
    for (std::size_t v = 0; v < n; ++v) verts[v] = VertexId(v);

    std::size_t rejections = 0;
    while (rejections < attempts) {
        rng.shuffle(verts);
        Matching candidate;
        for (std::size_t p = 0; p < r; ++p)
            candidate.add(Edge(verts[2 * p], verts[2 * p + 1]));

        bool ok = true;
        for (const Edge& e : candidate.edges())
            if (unionEdges.count(e)) {
                ok = false;
                break;
            }
        if (ok) {
            for (const Edge& e : unionList) {
                if (candidate.contains(e)) continue;
                if (candidate.isMatched(e.u) && candidate.isMatched(e.v)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            for (const Edge& e : candidate.edges()) {
                unionEdges.insert(e);
                unionList.push_back(e);
            }
            inst.matchings.push_back(std::move(candidate));
            rejections = 0;
        } else {
            ++rejections;
        }
    }
    return inst;
}

std::size_t pairwiseOverlapMax(const OrderedMatchingInstance& inst) {
    if (inst.t() < 2) return 0;
    std::vector<std::vector<VertexId>> verts(inst.t());
    for (std::size_t i = 0; i < inst.t(); ++i)
        verts[i] = inst.matchings[i].matchedVertices();
    std::size_t best = 0;
    for (std::size_t i = 0; i < inst.t(); ++i)
        for (std::size_t j = i + 1; j < inst.t(); ++j) {
            std::size_t overlap = 0;
            for (VertexId v : verts[i])
                if (inst.matchings[j].isMatched(v)) ++overlap;
            best = std::max(best, overlap);
        }
    return best;
}

HardSequence hardSequenceGen(const OrderedMatchingInstance& inst) {
    if (auto bad = verifyORS(inst))
        throw MalformedInstance("hard sequence needs a valid instance: " + describe(*bad));
    if (inst.t() == 0) throw MalformedInstance("hard sequence needs t >= 1");
    for (const Matching& m : inst.matchings)
        if (m.size() != inst.r)
            throw MalformedInstance("hard sequence needs every matching of size exactly r");

    const std::size_t m = inst.n;
    const std::size_t r = inst.r;
    const std::size_t s = m - 2 * r; // singleton count, the unmatched remainder
    HardSequence out;
    out.instanceVertices = m;
    out.singletons = s;
    out.stream.n = m + s;

    auto& events = out.stream.events;
    for (const Matching& matching : inst.matchings)
        for (const Edge& e : matching.edges()) events.push_back(UpdateEvent::insert(e));
    out.stream.annotations.emplace_back(events.empty() ? std::size_t(-1)
                                                       : events.size() - 1,
                                        " setup complete");

    std::vector<Edge> singletonEdges;
    for (std::size_t i = inst.t(); i >= 1; --i) {
        for (const Edge& e : singletonEdges) events.push_back(UpdateEvent::remove(e));
        singletonEdges.clear();
        if (i != inst.t())
            for (const Edge& e : inst.matchings[i].edges()) // M_{i+1}, 0-based i
                events.push_back(UpdateEvent::remove(e));

        const Matching& mi = inst.matchings[i - 1];
        std::size_t next = 0;
        for (std::size_t v = 0; v < m; ++v) {
            if (mi.isMatched(VertexId(v))) continue;
            Edge e(VertexId(v), VertexId(m + next));
            singletonEdges.push_back(e);
            events.push_back(UpdateEvent::insert(e));
            ++next;
        }
        out.iterationBoundaries.push_back(events.size());
        out.stream.annotations.emplace_back(events.size() - 1,
                                            " boundary iteration " + std::to_string(i));
    }
    return out;
}

namespace {

// Uniform absent edge. Falls back to enumerating the complement when the
// graph gets dense enough that rejection sampling would spin.
std::optional<Edge> randomAbsentEdge(std::size_t n,
                                     const std::unordered_set<Edge, EdgeHash>& present,
                                     Rng& rng) {
    const std::size_t maxPairs = n * (n - 1) / 2;
    if (present.size() >= maxPairs) return std::nullopt;
    if (double(present.size()) < 0.8 * double(maxPairs)) {
        for (;;) {
            VertexId u = VertexId(rng.below(n));
            VertexId v = VertexId(rng.below(n));
            if (u == v) continue;
            Edge e(u, v);
            if (!present.count(e)) return e;
        }
    }
    std::vector<Edge> absent;
    absent.reserve(maxPairs - present.size());
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (!present.count(Edge(u, v))) absent.push_back(Edge(u, v));
    return absent[rng.below(absent.size())];
}

} // namespace

UpdateStream randomStreamGen(std::size_t n, std::size_t steps, double insertBias,
                             Rng& rng) {
    if (n < 2 && steps > 0) throw InvalidArgument("randomStreamGen: need n >= 2");
    if (!(insertBias >= 0.0 && insertBias <= 1.0))
        throw InvalidArgument("randomStreamGen: insertBias must be in [0,1]");
    UpdateStream s;
    s.n = n;
    std::unordered_set<Edge, EdgeHash> present;
    std::vector<Edge> alive;
    for (std::size_t step = 0; step < steps; ++step) {
        bool insert = rng.chance(insertBias);
        if (insert && present.size() == n * (n - 1) / 2) insert = false;
        if (!insert && alive.empty()) insert = true;
        if (insert) {
            Edge e = *randomAbsentEdge(n, present, rng);
            present.insert(e);
            alive.push_back(e);
            s.events.push_back(UpdateEvent::insert(e));
        } else {
            std::size_t idx = rng.below(alive.size());
            Edge e = alive[idx];
            alive[idx] = alive.back();
            alive.pop_back();
            present.erase(e);
            s.events.push_back(UpdateEvent::remove(e));
        }
    }
    return s;
}

UpdateStream churnStreamGen(std::size_t n, std::size_t steps, std::size_t windowSize,
                            Rng& rng) {
    if (n < 2 && steps > 0) throw InvalidArgument("churnStreamGen: need n >= 2");
    if (windowSize < 1) throw InvalidArgument("churnStreamGen: windowSize must be >= 1");
    UpdateStream s;
    s.n = n;
    std::unordered_set<Edge, EdgeHash> present;
    std::deque<Edge> window;
    const std::size_t maxPairs = n * (n - 1) / 2;
    for (std::size_t step = 0; step < steps; ++step) {
        if (window.size() < std::min(windowSize, maxPairs)) {
            Edge e = *randomAbsentEdge(n, present, rng);
            present.insert(e);
            window.push_back(e);
            s.events.push_back(UpdateEvent::insert(e));
        } else {
            Edge e = window.front();
            window.pop_front();
            present.erase(e);
            s.events.push_back(UpdateEvent::remove(e));
        }
    }
    return s;
}

OrderedMatchingInstance parseInstance(std::istream& in) {
    OrderedMatchingInstance inst;
    std::string line;
    std::size_t lineNo = 0;
    auto nextLine = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineNo;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t at = line.find_first_not_of(" \t");
            if (at == std::string::npos) continue;
            if (line[at] == '#') continue;
            return true;
        }
        return false;
    };

    if (!nextLine()) throw ParseError(1, "missing 'n r t' header");
    long long n = -1, r = -1, t = -1;
    {
        std::istringstream ls(line);
        if (!(ls >> n >> r >> t) || n < 0 || r < 0 || t < 0)
            throw ParseError(lineNo, "expected 'n r t'");
    }
    inst.n = std::size_t(n);
    inst.r = std::size_t(r);
    for (long long i = 1; i <= t; ++i) {
        if (!nextLine()) throw ParseError(lineNo + 1, "missing matching header");
        std::istringstream ls(line);
        std::string tok;
        long long idx = -1, size = -1;
        if (!(ls >> tok >> idx >> size) || tok != "matching" || idx != i || size < 0)
            throw ParseError(lineNo, "expected 'matching " + std::to_string(i) + " <size>'");
        Matching m;
        for (long long e = 0; e < size; ++e) {
            if (!nextLine()) throw ParseError(lineNo + 1, "missing edge line");
            std::istringstream es(line);
            long long u = -1, v = -1;
            if (!(es >> u >> v) || u < 0 || v < 0) throw ParseError(lineNo, "expected '<u> <v>'");
            if (u == v) throw ParseError(lineNo, "self-loop");
            if (std::size_t(u) >= inst.n || std::size_t(v) >= inst.n)
                throw ParseError(lineNo, "vertex out of range");
            try {
                m.add(Edge(VertexId(u), VertexId(v)));
            } catch (const InvalidArgument&) {
                throw MalformedInstance("matching " + std::to_string(i) +
                                        " repeats a vertex (line " +
                                        std::to_string(lineNo) + ")");
            }
        }
        inst.matchings.push_back(std::move(m));
    }
    return inst;
}

OrderedMatchingInstance loadInstance(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open instance file: " + path);
    return parseInstance(f);
}

void writeInstance(std::ostream& out, const OrderedMatchingInstance& inst) {
    out << inst.n << " " << inst.r << " " << inst.t() << "\n";
    for (std::size_t i = 0; i < inst.t(); ++i) {
        std::vector<Edge> edges = inst.matchings[i].edges();
        out << "matching " << (i + 1) << " " << edges.size() << "\n";
        for (const Edge& e : edges) out << e.u << " " << e.v << "\n";
    }
}

void saveInstance(const std::string& path, const OrderedMatchingInstance& inst) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write instance file: " + path);
    writeInstance(f, inst);
}

} // namespace dynmatch
