// Acceptance suite: one section per criterion, one PASS/FAIL line each.
// Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "dynmatch/bench.hpp"
#include "dynmatch/engine.hpp"
#include "dynmatch/matrix_access.hpp"
#include "dynmatch/oracle.hpp"
#include "dynmatch/ors.hpp"
#include "dynmatch/sparsifier.hpp"

using namespace dynmatch;

namespace {

struct Section {
    const char* name;
    bool (*fn)(std::string& detail);
};

double seconds(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
}

// ---------------------------------------------------------------- criterion 1+4
// Shared runs: the additive sweep also collects certificate-contract data.

struct CertContractStats {
    std::uint64_t rebuilds = 0;
    std::uint64_t c2 = 0;
    std::uint64_t sparseOverlapViolations = 0;
    std::uint64_t accumulatedOverlapViolations = 0;
    std::uint64_t candidateFloorFailures = 0; // rebuilds with a below-floor candidate
};

struct AdditiveRunResult {
    std::size_t checkpoints = 0;
    std::size_t violations = 0;
    long long worstGap = 0;
};

CertContractStats g_certStats;

AdditiveRunResult additiveRun(std::size_t n, double eps, std::uint64_t seed) {
    Rng gen(seed);
    UpdateStream stream = randomStreamGen(n, 5000, 0.55, gen);

    EngineConfig cfg;
    cfg.n = n;
    cfg.epsilon = eps;
    cfg.rootSeed = seed * 1000003ULL + 17;
    DynamicMatchingEngine engine(cfg);

    bool rebuiltFlag = false;
    engine.setRebuildObserver([&](const RebuildInfo& info) {
        rebuiltFlag = true;
        ++g_certStats.rebuilds;
        bool floorOk = true;
        for (const CertificateCandidate& cand : info.outcome.candidates) {
            double delta = cand.deltaUsed;
            double threshold = delta * delta * double(n) / 8.0;
            if (double(cand.greedySizeAtCall) < threshold) {
                double floor = std::floor(9.0 * delta * delta * double(n) / 16.0);
                if (double(cand.matching.size()) < floor) floorOk = false;
            }
        }
        if (!floorOk) ++g_certStats.candidateFloorFailures;
        if (info.outcome.tag == ConditionTag::C2) {
            ++g_certStats.c2;
            EdgeListIndex sparse(n, info.sparseEdges);
            for (const Edge& e : info.outcome.certificate->matching.edges())
                if (sparse.contains(e)) ++g_certStats.sparseOverlapViolations;
            if (!info.certificateDisjointFromAccumulated)
                ++g_certStats.accumulatedOverlapViolations;
        }
    });

    DynamicGraph shadow(n);
    AdditiveRunResult res;
    const std::size_t checkEvery = 250;
    for (std::size_t i = 0; i < stream.events.size(); ++i) {
        const UpdateEvent& ev = stream.events[i];
        if (ev.kind == UpdateEvent::Kind::Insert)
            shadow.applyInsert(ev.edge);
        else
            shadow.applyDelete(ev.edge);
        rebuiltFlag = false;
        engine.applyUpdate(ev);
        bool last = i + 1 == stream.events.size();
        if (rebuiltFlag || (i + 1) % checkEvery == 0 || last) {
            std::size_t mu = maximumMatchingSize(n, shadow.edges());
            long long gap = (long long)mu - (long long)engine.currentMatching().size();
            ++res.checkpoints;
            res.worstGap = std::max(res.worstGap, gap);
            if (double(gap) > eps * double(n) + 1e-9) ++res.violations;
        }
    }
    return res;
}

bool criterion1(std::string& detail) {
    g_certStats = CertContractStats{};
    std::size_t totalCheckpoints = 0, totalViolations = 0;
    long long worst = 0;
    for (std::size_t n : {40, 100, 200}) {
        for (double eps : {0.1, 0.2}) {
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                AdditiveRunResult r = additiveRun(n, eps, seed);
                totalCheckpoints += r.checkpoints;
                totalViolations += r.violations;
                worst = std::max(worst, r.worstGap);
            }
        }
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "checkpoints=%zu violations=%zu worstGap=%lld (60 runs x 5000 updates)",
                  totalCheckpoints, totalViolations, worst);
    detail = buf;
    return totalCheckpoints > 0 && totalViolations == 0;
}

bool criterion4(std::string& detail) {
    const CertContractStats& s = g_certStats;
    double floorFailRate =
        s.rebuilds == 0 ? 1.0 : double(s.candidateFloorFailures) / double(s.rebuilds);
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "rebuilds=%llu c2=%llu sparseOverlap=%llu hcertOverlap=%llu "
                  "floorFailRate=%.4f",
                  (unsigned long long)s.rebuilds, (unsigned long long)s.c2,
                  (unsigned long long)s.sparseOverlapViolations,
                  (unsigned long long)s.accumulatedOverlapViolations, floorFailRate);
    detail = buf;
    return s.rebuilds > 0 && s.c2 > 0 && s.sparseOverlapViolations == 0 &&
           s.accumulatedOverlapViolations == 0 && floorFailRate <= 0.01;
}

// ---------------------------------------------------------------- criterion 2

bool criterion2(std::string& detail) {
    const std::size_t n = 256;
    const double eps = 0.25;
    std::size_t checks = 0, soft = 0, hard = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng gen(seed);
        UpdateStream stream = randomStreamGen(32, 2000, 0.55, gen); // mu <= 16 = n/16
        stream.n = n;
        MatchingWrapper wrapper(n, eps, seed * 31 + 5);
        DynamicGraph shadow(n);
        for (std::size_t i = 0; i < stream.events.size(); ++i) {
            const UpdateEvent& ev = stream.events[i];
            wrapper.applyUpdate(ev);
            if (ev.kind == UpdateEvent::Kind::Insert)
                shadow.applyInsert(ev.edge);
            else
                shadow.applyDelete(ev.edge);
            if ((i + 1) % 50 == 0 || i + 1 == stream.events.size()) {
                std::size_t mu = maximumMatchingSize(n, shadow.edges());
                std::size_t got = wrapper.currentMatching().size();
                ++checks;
                if (double(got) >= (1.0 - eps) * double(mu) - 1e-9) ++soft;
                if (double(got) >= (1.0 - 2.0 * eps) * double(mu) - 1e-9) ++hard;
            }
        }
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf), "checkpoints=%zu soft(1-eps)=%zu hard(1-2eps)=%zu",
                  checks, soft, hard);
    detail = buf;
    return checks > 0 && hard == checks && double(soft) >= 0.95 * double(checks);
}

// ---------------------------------------------------------------- criterion 3

bool criterion3(std::string& detail) {
    Rng packRng(424242);
    OrderedMatchingInstance inst = greedyORSPack(50, 10, 500, packRng);
    if (verifyORS(inst).has_value()) {
        detail = "packed instance failed verification";
        return false;
    }
    HardSequence hs = hardSequenceGen(inst);
    if (firstIllegalEvent(hs.stream) != hs.stream.events.size()) {
        detail = "hard stream contains an illegal event";
        return false;
    }

    const double eps = 0.2;
    EngineConfig cfg;
    cfg.n = hs.stream.n;
    cfg.epsilon = eps;
    cfg.rootSeed = 7;
    DynamicMatchingEngine engine(cfg);
    DynamicGraph shadow(hs.stream.n);

    std::size_t boundaries = 0, perfect = 0, engineOk = 0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < hs.stream.events.size(); ++i) {
        const UpdateEvent& ev = hs.stream.events[i];
        engine.applyUpdate(ev);
        if (ev.kind == UpdateEvent::Kind::Insert)
            shadow.applyInsert(ev.edge);
        else
            shadow.applyDelete(ev.edge);
        if (next < hs.iterationBoundaries.size() && i + 1 == hs.iterationBoundaries[next]) {
            ++next;
            ++boundaries;
            std::size_t mu = maximumMatchingSize(hs.stream.n, shadow.edges());
            if (2 * mu == hs.stream.n) ++perfect;
            if (double(engine.currentMatching().size()) >= (1.0 - eps) * double(mu) - 1e-9)
                ++engineOk;
        }
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf), "t=%zu boundaries=%zu perfect=%zu engineOk=%zu",
                  inst.t(), boundaries, perfect, engineOk);
    detail = buf;
    return boundaries == inst.t() && boundaries > 0 && perfect == boundaries &&
           engineOk == boundaries;
}

// ---------------------------------------------------------------- criterion 5

std::optional<OrsViolationKind> bruteVerify(const OrderedMatchingInstance& inst,
                                            bool wholeUnion) {
    std::size_t t = inst.t();
    for (std::size_t i = 0; i < t; ++i)
        if (inst.matchings[i].size() < inst.r) return OrsViolationKind::TooSmall;
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < i; ++j)
            for (const Edge& e : inst.matchings[i].edges())
                if (inst.matchings[j].contains(e)) return OrsViolationKind::NotDisjoint;
    for (std::size_t i = 0; i < t; ++i) {
        std::size_t limit = wholeUnion ? t : i + 1;
        for (std::size_t j = 0; j < limit; ++j) {
            if (j == i) continue;
            for (const Edge& e : inst.matchings[j].edges()) {
                if (inst.matchings[i].contains(e)) continue;
                if (inst.matchings[i].isMatched(e.u) && inst.matchings[i].isMatched(e.v))
                    return OrsViolationKind::NotInduced;
            }
        }
    }
    return std::nullopt;
}

bool criterion5(std::string& detail) {
    std::size_t checked = 0, disagreements = 0;
    auto compare = [&](const OrderedMatchingInstance& inst) {
        ++checked;
        if (verifyORS(inst).has_value() != bruteVerify(inst, false).has_value())
            ++disagreements;
        if (verifyRS(inst).has_value() != bruteVerify(inst, true).has_value())
            ++disagreements;
    };

    // exhaustive: n=5, all sequences of t <= 2 from the full pool of one- and
    // two-edge matchings, plus all t=3 sequences of single-edge matchings
    const std::size_t n = 5;
    std::vector<Edge> all;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) all.push_back(Edge(u, v));
    std::vector<Matching> pool;
    for (const Edge& e : all) {
        Matching m;
        m.add(e);
        pool.push_back(m);
    }
    std::size_t singles = pool.size();
    for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = a + 1; b < all.size(); ++b) {
            const Edge &ea = all[a], &eb = all[b];
            if (ea.u != eb.u && ea.u != eb.v && ea.v != eb.u && ea.v != eb.v) {
                Matching m;
                m.add(ea);
                m.add(eb);
                pool.push_back(m);
            }
        }
    auto instOf = [&](std::vector<Matching> ms) {
        OrderedMatchingInstance inst;
        inst.n = n;
        inst.r = 1;
        inst.matchings = std::move(ms);
        return inst;
    };
    for (std::size_t a = 0; a < pool.size(); ++a) {
        compare(instOf({pool[a]}));
        for (std::size_t b = 0; b < pool.size(); ++b)
            compare(instOf({pool[a], pool[b]}));
    }
    for (std::size_t a = 0; a < singles; ++a)
        for (std::size_t b = 0; b < singles; ++b)
            for (std::size_t c = 0; c < singles; ++c)
                compare(instOf({pool[a], pool[b], pool[c]}));

    // randomized: 10^4 instances over the full criterion box
    Rng rng(99);
    for (int trial = 0; trial < 10000; ++trial) {
        std::size_t nn = 4 + rng.below(9); // up to 12
        std::size_t r = 1 + rng.below(2);
        std::size_t t = 1 + rng.below(4);
        OrderedMatchingInstance inst;
        inst.n = nn;
        inst.r = r;
        for (std::size_t i = 0; i < t; ++i) {
            Matching m;
            std::size_t want = r + rng.below(2);
            for (int attempts = 0; attempts < 24 && m.size() < want; ++attempts) {
                VertexId x = VertexId(rng.below(nn)), y = VertexId(rng.below(nn));
                if (x == y) continue;
                Edge e(x, y);
                if (!m.isMatched(e.u) && !m.isMatched(e.v)) m.add(e);
            }
            inst.matchings.push_back(std::move(m));
        }
        compare(inst);
    }

    char buf[128];
    std::snprintf(buf, sizeof(buf), "instances=%zu disagreements=%zu", checked,
                  disagreements);
    detail = buf;
    return disagreements == 0 && checked > 10000;
}

// ---------------------------------------------------------------- criterion 6

bool criterion6(std::string& detail) {
    std::size_t runs = 0, sizeOk = 0, maximalOk = 0;
    for (std::size_t n : {32, 64}) {
        for (double delta : {0.25, 0.5}) {
            const std::size_t need = std::size_t(delta * double(n) + 1e-9);
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                // random graph rejected until mu >= delta n, oracle-verified
                Rng gen(seed * 7 + n);
                DynamicGraph g(n);
                double p = delta >= 0.5 ? 0.25 : 0.12;
                for (;;) {
                    g.clearEdges();
                    for (VertexId u = 0; u < n; ++u)
                        for (VertexId v = u + 1; v < n; ++v)
                            if (gen.chance(p)) g.applyInsert(Edge(u, v));
                    if (maximumMatchingSize(n, g.edges()) >= need) break;
                    p = std::min(1.0, p + 0.05);
                }
                GraphMatrixAccess dense(g);
                std::vector<VertexId> u;
                for (VertexId v = 0; v < n; ++v) u.push_back(v);
                Rng solver(seed);
                SamplingResult r = randomSampling(dense, u, delta, solver);
                ++runs;
                if (double(r.best.size()) >= delta * delta * double(n) - 1e-9) ++sizeOk;
                bool maximal = true;
                if (r.scanCompleted) {
                    for (const Edge& e : g.edges())
                        if (!r.unionMatching.isMatched(e.u) &&
                            !r.unionMatching.isMatched(e.v))
                            maximal = false;
                }
                if (maximal) ++maximalOk;
            }
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "runs=%zu sizeOk=%zu unionMaximal=%zu", runs, sizeOk,
                  maximalOk);
    detail = buf;
    return maximalOk == runs && double(sizeOk) >= 0.99 * double(runs);
}

// ---------------------------------------------------------------- criterion 7

bool criterion7(std::string& detail) {
    std::size_t rebuildsChecked = 0, mismatches = 0;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const std::size_t n = 48;
        EngineConfig cfg;
        cfg.n = n;
        cfg.epsilon = 0.2;
        cfg.rootSeed = seed;
        cfg.threshold = 150; // short phases exercise the certificate overlay
        DynamicMatchingEngine engine(cfg);
        engine.setRebuildObserver([&](const RebuildInfo& info) {
            ++rebuildsChecked;
            EdgeListIndex sparse(n, info.sparseEdges);
            for (VertexId u = 0; u < n; ++u)
                for (VertexId v = u + 1; v < n; ++v) {
                    bool lhs = differenceMatrixProbe(engine.graph(),
                                                     engine.overlays().added, u, v) ||
                               sparse.contains(Edge(u, v));
                    if (lhs != engine.graph().listHasEdge(u, v)) ++mismatches;
                }
        });
        Rng gen(seed + 100);
        UpdateStream stream = randomStreamGen(n, 900, 0.6, gen);
        for (const UpdateEvent& ev : stream.events) engine.applyUpdate(ev);
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "rebuilds=%zu mismatches=%zu", rebuildsChecked,
                  mismatches);
    detail = buf;
    return rebuildsChecked > 0 && mismatches == 0;
}

// ---------------------------------------------------------------- criterion 8

bool criterion8(std::string& detail) {
    bool ok = true;
    std::string note;
    for (std::size_t n : {100, 200, 400}) {
        Rng gen(n);
        UpdateStream stream = randomStreamGen(n, 5000, 0.55, gen);
        std::vector<BenchConfig> cfgs(2);
        cfgs[0].kind = EngineKind::Ors;
        cfgs[1].kind = EngineKind::Rebuild;
        for (BenchConfig& c : cfgs) {
            c.epsilon = 0.2;
            c.seed = 12345;
            c.checkEvery = 500;
            c.streamLabel = "trend-" + std::to_string(n);
        }
        auto reports = compareEngines(stream, cfgs);
        auto again = compareEngines(stream, cfgs);
        for (std::size_t i = 0; i < reports.size(); ++i) {
            auto j = reports[i].toJson(false);
            auto problems = validateRunReport(j);
            if (!problems.empty()) {
                ok = false;
                note += " schema(" + std::to_string(n) + "):" + problems.front();
            }
            if (j.dump() != again[i].toJson(false).dump()) {
                ok = false;
                note += " nondeterministic(" + std::to_string(n) + ")";
            }
            if (!j["totals"].contains("amortizedMatrixProbesPerUpdate")) ok = false;
        }
        // the engine report must carry the per-phase sum-of-inverse-degree rows
        auto j = reports[0].toJson(false);
        if (j["phases"].empty()) {
            ok = false;
            note += " missingPhases(" + std::to_string(n) + ")";
        }
        for (const auto& p : j["phases"])
            if (!p.contains("sumInverseD")) ok = false;
    }
    detail = ok ? "schema valid, deterministic, probe trends present" : note;
    return ok;
}

} // namespace

int main() {
    // criterion 4 consumes data collected during criterion 1's runs
    Section sections[] = {
        {"1 additive guarantee (engine vs oracle, 60 runs)", criterion1},
        {"2 multiplicative wrapper on small-mu streams", criterion2},
        {"3 hard-sequence behavior (pack, replay, boundaries)", criterion3},
        {"4 certificate contract across criterion-1 runs", criterion4},
        {"5 verifier soundness vs brute force", criterion5},
        {"6 sampled-matching contract", criterion6},
        {"7 overlay algebra at rebuilds", criterion7},
        {"8 work-trend report (schema + determinism)", criterion8},
    };

    int failures = 0;
    for (const Section& s : sections) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = s.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %s: %s (%.1fs)\n", ok ? "PASS" : "FAIL", s.name,
                    detail.c_str(), seconds(t0));
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
