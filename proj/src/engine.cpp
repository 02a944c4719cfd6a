#include "dynmatch/engine.hpp"

#include <algorithm>

#include "dynmatch/matrix_access.hpp"

namespace dynmatch {

namespace {

EngineConfig validated(EngineConfig c) {
    if (c.n < 1) throw ConfigError("engine: n must be >= 1");
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0))
        throw ConfigError("engine: epsilon must be in (0,1)");
    if (c.threshold && *c.threshold < 1)
        throw ConfigError("engine: threshold must be >= 1");
    if (c.rebuildPeriod && *c.rebuildPeriod < 1)
        throw ConfigError("engine: rebuildPeriod must be >= 1");
    return c;
}

} // namespace

DynamicMatchingEngine::DynamicMatchingEngine(const EngineConfig& config)
    : config_(validated(config)),
      threshold_(config_.threshold.value_or(EngineConfig::defaultThreshold(config_.n))),
      rebuildPeriod_(config_.rebuildPeriod.value_or(
          EngineConfig::defaultRebuildPeriod(config_.n, config_.epsilon))),
      graph_(config_.n), overlays_(config_.n),
      rng_(Rng(config_.rootSeed).child(0x656e67696eULL)) {
    metrics_.phases.push_back(PhaseRecord{0, 0, 0, 0.0});
    rebuild();
}

PhaseRecord& DynamicMatchingEngine::livePhase() { return metrics_.phases.back(); }

void DynamicMatchingEngine::applyUpdate(const UpdateEvent& ev) {
    const Edge& e = ev.edge;
    if (e.v >= config_.n) throw InvalidVertex("engine: edge endpoint out of range");

    if (ev.kind == UpdateEvent::Kind::Insert) {
        graph_.applyInsert(e);
        overlays_.added.applyInsert(e);
        overlays_.deleted.applyDelete(e);
    } else {
        graph_.applyDelete(e);
        overlays_.added.applyDelete(e);
        matching_.remove(e);
        overlays_.deleted.applyInsert(e);
    }

    ++updatesInPhase_;
    ++updatesTotal_;
    ++metrics_.updatesApplied;

    if (updatesInPhase_ == threshold_) {
        overlays_.clearEdges();
        updatesInPhase_ = 0;
        ++phaseIndex_;
        ++metrics_.phaseResets;
        metrics_.phases.push_back(PhaseRecord{phaseIndex_, 0, 0, 0.0});
    }

    if (updatesInPhase_ % rebuildPeriod_ == 0) rebuild();

    if (updateObserver_ && updateEvery_ != 0 && updatesTotal_ % updateEvery_ == 0)
        updateObserver_(updatesTotal_);

    if (config_.strictChecks) verifyInvariants();
}

void DynamicMatchingEngine::rebuild() {
    DifferenceMatrixAccess dense(graph_, overlays_.added);
    std::vector<Edge> sparse =
        materializeSparse(overlays_.added, overlays_.certified, overlays_.deleted);

    MatchOptions opt;
    opt.measureDegree = config_.measureDegree;
    SolveOutcome outcome = matchAndCertify(dense, sparse, config_.epsilon / 2.0, rng_, opt);

    ++rebuildIndex_;
    ++metrics_.rebuilds;
    ++livePhase().rebuilds;

    bool certDisjoint = true;
    if (outcome.tag == ConditionTag::C2) {
        Certificate& cert = *outcome.certificate;
        cert.rebuildIndex = rebuildIndex_;
        cert.phaseIndex = phaseIndex_;
        for (const Edge& ce : cert.matching.edges()) {
            if (overlays_.certified.listHasEdge(ce.u, ce.v)) {
                certDisjoint = false;
                break;
            }
        }
        if (!certDisjoint && config_.strictChecks)
            throw Error("engine: certificate overlaps accumulated certificate set");
        for (const Edge& ce : cert.matching.edges()) overlays_.certified.applyInsert(ce);

        CertificateRecord rec;
        rec.rebuildIndex = rebuildIndex_;
        rec.phaseIndex = phaseIndex_;
        rec.size = cert.matching.size();
        rec.degreeProxy = cert.degreeProxy;
        if (cert.measuredDegree) rec.measuredDegree = *cert.measuredDegree;
        metrics_.certificateLog.push_back(rec);
        ++livePhase().certificates;
        livePhase().sumInverseD += 1.0 / cert.degreeProxy;
        ++metrics_.c2Rebuilds;
    } else {
        ++metrics_.c1Rebuilds;
        if (outcome.downgraded) ++metrics_.downgradedRebuilds;
    }

    matching_ = outcome.matching;

    if (observer_) {
        RebuildInfo info{rebuildIndex_, phaseIndex_,   updatesTotal_,
                         outcome,       sparse,        certDisjoint};
        observer_(info);
    }
}

Metrics DynamicMatchingEngine::metricsSnapshot() const {
    Metrics m = metrics_;
    m.matrixProbes = graph_.matrixProbeCount() + overlays_.added.matrixProbeCount() +
                     overlays_.deleted.matrixProbeCount() +
                     overlays_.certified.matrixProbeCount();
    m.listReads = graph_.listReadCount() + overlays_.added.listReadCount() +
                  overlays_.deleted.listReadCount() +
                  overlays_.certified.listReadCount();
    return m;
}

void DynamicMatchingEngine::verifyInvariants() const {
    // M_G is a matching over current edges
    for (const Edge& e : matching_.edges())
        if (!graph_.listHasEdge(e.u, e.v))
            throw Error("engine invariant: matched edge missing from graph");
    // the added and deleted overlays never share an edge
    for (const Edge& e : overlays_.deleted.edges())
        if (overlays_.added.listHasEdge(e.u, e.v))
            throw Error("engine invariant: added and deleted overlays intersect");
    // overlay sizes stay within the phase budget
    if (overlays_.added.edgeCount() + overlays_.deleted.edgeCount() > threshold_)
        throw Error("engine invariant: overlay size exceeds phase threshold");
    // added is a subgraph of the live graph
    for (const Edge& e : overlays_.added.edges())
        if (!graph_.listHasEdge(e.u, e.v))
            throw Error("engine invariant: added overlay not a subgraph of G");
}

} // namespace dynmatch
