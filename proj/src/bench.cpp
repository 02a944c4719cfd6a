#include "dynmatch/bench.hpp"

#include <chrono>

#include "dynmatch/oracle.hpp"
#include "dynmatch/sparsifier.hpp"

namespace dynmatch {

EngineKind parseEngineKind(const std::string& name) {
    if (name == "ors") return EngineKind::Ors;
    if (name == "ors-multiplicative") return EngineKind::OrsMultiplicative;
    if (name == "maximal") return EngineKind::Maximal;
    if (name == "rebuild") return EngineKind::Rebuild;
    throw InvalidArgument("unknown engine kind: " + name);
}

std::string engineKindName(EngineKind kind) {
    switch (kind) {
    case EngineKind::Ors: return "ors";
    case EngineKind::OrsMultiplicative: return "ors-multiplicative";
    case EngineKind::Maximal: return "maximal";
    case EngineKind::Rebuild: return "rebuild";
    }
    return "?";
}

namespace {

// Uniform driver interface over the four maintained algorithms.
class DynamicAlgo {
public:
    virtual ~DynamicAlgo() = default;
    virtual void apply(const UpdateEvent& ev) = 0;
    virtual std::size_t matchingSize() const = 0;
    virtual std::uint64_t matrixProbes() const = 0;
    virtual std::uint64_t listReads() const = 0;
    virtual std::uint64_t rebuilds() const = 0;
    virtual void fillEngineDetails(RunReport&) const {}
};

class OrsAlgo final : public DynamicAlgo {
public:
    explicit OrsAlgo(const EngineConfig& c) : engine_(c) {}
    void apply(const UpdateEvent& ev) override { engine_.applyUpdate(ev); }
    std::size_t matchingSize() const override { return engine_.currentMatching().size(); }
    std::uint64_t matrixProbes() const override {
        return engine_.metricsSnapshot().matrixProbes;
    }
    std::uint64_t listReads() const override { return engine_.metricsSnapshot().listReads; }
    std::uint64_t rebuilds() const override { return engine_.rebuildIndex(); }
    void fillEngineDetails(RunReport& r) const override {
        Metrics m = engine_.metricsSnapshot();
        r.phases = m.phases;
        r.certificates = m.certificateLog;
        r.totals.phaseResets = m.phaseResets;
    }

private:
    DynamicMatchingEngine engine_;
};

class WrapperAlgo final : public DynamicAlgo {
public:
    WrapperAlgo(std::size_t n, double epsilon, std::uint64_t seed)
        : wrapper_(n, epsilon, seed) {}
    void apply(const UpdateEvent& ev) override { wrapper_.applyUpdate(ev); }
    std::size_t matchingSize() const override { return wrapper_.currentMatching().size(); }
    std::uint64_t matrixProbes() const override { return wrapper_.matrixProbeCount(); }
    std::uint64_t listReads() const override { return wrapper_.listReadCount(); }
    std::uint64_t rebuilds() const override { return wrapper_.rebuildCount(); }
    void fillEngineDetails(RunReport& r) const override {
        r.wrapperInstances = wrapper_.instanceReports();
    }

private:
    MatchingWrapper wrapper_;
};

class MaximalAlgo final : public DynamicAlgo {
public:
    explicit MaximalAlgo(std::size_t n) : base_(n) {}
    void apply(const UpdateEvent& ev) override { base_.apply(ev); }
    std::size_t matchingSize() const override { return base_.matching().size(); }
    std::uint64_t matrixProbes() const override { return base_.graph().matrixProbeCount(); }
    std::uint64_t listReads() const override { return base_.graph().listReadCount(); }
    std::uint64_t rebuilds() const override { return 0; }

private:
    MaximalMatchingBaseline base_;
};

class RebuildAlgo final : public DynamicAlgo {
public:
    RebuildAlgo(std::size_t n, std::size_t period) : base_(n, period), period_(period) {}
    void apply(const UpdateEvent& ev) override {
        base_.apply(ev);
        if (++count_ % period_ == 0) ++rebuilds_;
    }
    std::size_t matchingSize() const override { return base_.matching().size(); }
    std::uint64_t matrixProbes() const override { return base_.graph().matrixProbeCount(); }
    std::uint64_t listReads() const override { return base_.graph().listReadCount(); }
    std::uint64_t rebuilds() const override { return rebuilds_; }

private:
    RebuildMatchingBaseline base_;
    std::size_t period_;
    std::uint64_t count_ = 0, rebuilds_ = 0;
};

std::unique_ptr<DynamicAlgo> makeAlgo(std::size_t n, const BenchConfig& c) {
    switch (c.kind) {
    case EngineKind::Ors: {
        EngineConfig ec;
        ec.n = n;
        ec.epsilon = c.epsilon;
        if (c.threshold != 0) ec.threshold = c.threshold;
        if (c.rebuildPeriod != 0) ec.rebuildPeriod = c.rebuildPeriod;
        ec.rootSeed = c.seed;
        ec.measureDegree = c.measureDegree;
        return std::make_unique<OrsAlgo>(ec);
    }
    case EngineKind::OrsMultiplicative:
        return std::make_unique<WrapperAlgo>(n, c.epsilon, c.seed);
    case EngineKind::Maximal:
        return std::make_unique<MaximalAlgo>(n);
    case EngineKind::Rebuild: {
        std::size_t period = c.rebuildPeriod != 0
                                 ? c.rebuildPeriod
                                 : EngineConfig::defaultRebuildPeriod(n, c.epsilon);
        return std::make_unique<RebuildAlgo>(n, period);
    }
    }
    throw InvalidArgument("bad engine kind");
}

GuaranteeSummary makeGuarantee(const BenchConfig& c, std::size_t n) {
    GuaranteeSummary g;
    switch (c.kind) {
    case EngineKind::Ors:
        g.kind = "additive";
        g.bound = c.epsilon * double(n);
        break;
    case EngineKind::OrsMultiplicative:
        g.kind = "multiplicative";
        g.bound = 1.0 - 2.0 * c.epsilon; // hard floor; the (1-ε) line is statistical
        break;
    default:
        g.kind = "none";
        break;
    }
    return g;
}

void noteViolation(GuaranteeSummary& g, const CheckpointRecord& c) {
    if (c.oracleSkipped || c.oracleSize < 0) return;
    bool bad = false;
    if (g.kind == "additive")
        bad = double(c.additiveGap) > g.bound + 1e-9;
    else if (g.kind == "multiplicative")
        bad = double(c.engineSize) + 1e-9 < g.bound * double(c.oracleSize);
    if (bad) {
        ++g.violations;
        g.holds = false;
    }
}

} // namespace

std::vector<RunReport> compareEngines(const UpdateStream& stream,
                                      const std::vector<BenchConfig>& configs) {
    const std::size_t n = stream.n;
    const auto startWall = std::chrono::steady_clock::now();

    std::vector<std::unique_ptr<DynamicAlgo>> algos;
    std::vector<RunReport> reports(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const BenchConfig& c = configs[i];
        algos.push_back(makeAlgo(n, c));
        RunReport& r = reports[i];
        r.config.engine = engineKindName(c.kind);
        r.config.n = n;
        r.config.epsilon = c.epsilon;
        r.config.threshold =
            c.threshold != 0 ? c.threshold : EngineConfig::defaultThreshold(n);
        r.config.rebuildPeriod = c.rebuildPeriod != 0
                                     ? c.rebuildPeriod
                                     : EngineConfig::defaultRebuildPeriod(n, c.epsilon);
        r.config.seed = c.seed;
        r.config.checkEvery = c.checkEvery;
        r.config.measureDegree = c.measureDegree;
        r.config.streamLabel = c.streamLabel;
        r.guarantee = makeGuarantee(c, n);
    }

    // shadow copy of the true graph for oracle snapshots
    DynamicGraph shadow(n);
    const std::size_t oracleCap =
        configs.empty() ? kOracleVertexCap : configs.front().oracleCap;
    bool oracleSkipNoted = false;

    std::vector<std::uint64_t> rebuildSeen(configs.size(), 0);
    for (std::size_t i = 0; i < configs.size(); ++i) rebuildSeen[i] = algos[i]->rebuilds();

    auto snapshot = [&](std::size_t updateIndex, std::vector<bool> atRebuild) {
        long long oracleSize = -1;
        bool skipped = n > oracleCap;
        if (!skipped) {
            std::vector<Edge> edges = shadow.edges();
            oracleSize = (long long)maximumMatchingSize(n, edges);
        } else if (!oracleSkipNoted) {
            for (RunReport& r : reports)
                r.notes.push_back("oracle skipped: n exceeds cap " +
                                  std::to_string(oracleCap));
            oracleSkipNoted = true;
        }
        for (std::size_t i = 0; i < algos.size(); ++i) {
            CheckpointRecord c;
            c.updateIndex = updateIndex;
            c.engineSize = algos[i]->matchingSize();
            c.oracleSize = oracleSize;
            c.oracleSkipped = skipped;
            c.additiveGap = skipped ? 0 : oracleSize - (long long)c.engineSize;
            c.ratio = (!skipped && oracleSize > 0)
                          ? double(c.engineSize) / double(oracleSize)
                          : 1.0;
            c.atRebuild = atRebuild[i];
            noteViolation(reports[i].guarantee, c);
            reports[i].checkpoints.push_back(c);
        }
    };

    const std::size_t checkEvery =
        configs.empty() ? 0 : configs.front().checkEvery;
    for (std::size_t idx = 0; idx < stream.events.size(); ++idx) {
        const UpdateEvent& ev = stream.events[idx];
        if (ev.kind == UpdateEvent::Kind::Insert)
            shadow.applyInsert(ev.edge);
        else
            shadow.applyDelete(ev.edge);
        std::vector<bool> atRebuild(algos.size(), false);
        bool any = false;
        for (std::size_t i = 0; i < algos.size(); ++i) {
            algos[i]->apply(ev);
            std::uint64_t r = algos[i]->rebuilds();
            if (r != rebuildSeen[i]) {
                rebuildSeen[i] = r;
                atRebuild[i] = true;
                any = true;
            }
        }
        bool gridHit = checkEvery != 0 && (idx + 1) % checkEvery == 0;
        bool last = idx + 1 == stream.events.size();
        if (any || gridHit || last) snapshot(idx + 1, atRebuild);
    }

    const double wallMillis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  startWall)
            .count();
    for (std::size_t i = 0; i < algos.size(); ++i) {
        RunReport& r = reports[i];
        algos[i]->fillEngineDetails(r);
        r.totals.matrixProbes = algos[i]->matrixProbes();
        r.totals.listReads = algos[i]->listReads();
        r.totals.rebuilds = algos[i]->rebuilds();
        r.totals.updates = stream.events.size();
        if (!stream.events.empty()) {
            r.totals.amortizedMatrixProbesPerUpdate =
                double(r.totals.matrixProbes) / double(stream.events.size());
            r.totals.amortizedListReadsPerUpdate =
                double(r.totals.listReads) / double(stream.events.size());
        }
        r.wallMillis = wallMillis;
    }
    return reports;
}

RunReport runBench(const UpdateStream& stream, const BenchConfig& config) {
    return compareEngines(stream, {config}).front();
}

} // namespace dynmatch
