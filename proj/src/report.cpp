#include "dynmatch/report.hpp"

#include <chrono>
#include <sstream>

namespace dynmatch {

using nlohmann::json;

namespace {

std::string nowIso8601() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

json RunReport::toJson(bool includeMeta) const {
    json j;
    j["schemaVersion"] = 1;
    if (includeMeta) {
        j["meta"] = {{"generatedAt", nowIso8601()}, {"wallMillis", wallMillis}};
    }
    j["config"] = {{"engine", config.engine},
                   {"n", config.n},
                   {"epsilon", config.epsilon},
                   {"threshold", config.threshold},
                   {"rebuildPeriod", config.rebuildPeriod},
                   {"seed", config.seed},
                   {"checkEvery", config.checkEvery},
                   {"measureDegree", config.measureDegree},
                   {"stream", config.streamLabel}};
    j["checkpoints"] = json::array();
    for (const CheckpointRecord& c : checkpoints) {
        json row = {{"updateIndex", c.updateIndex},
                    {"engineSize", c.engineSize},
                    {"oracleSize", c.oracleSize},
                    {"additiveGap", c.additiveGap},
                    {"atRebuild", c.atRebuild},
                    {"oracleSkipped", c.oracleSkipped}};
        if (c.oracleSize > 0)
            row["ratio"] = c.ratio;
        else
            row["ratio"] = nullptr;
        j["checkpoints"].push_back(std::move(row));
    }
    j["phases"] = json::array();
    for (const PhaseRecord& p : phases)
        j["phases"].push_back({{"phaseIndex", p.phaseIndex},
                               {"rebuilds", p.rebuilds},
                               {"certificates", p.certificates},
                               {"sumInverseD", p.sumInverseD}});
    j["certificates"] = json::array();
    for (const CertificateRecord& c : certificates) {
        json row = {{"rebuildIndex", c.rebuildIndex},
                    {"phaseIndex", c.phaseIndex},
                    {"size", c.size},
                    {"degreeProxy", c.degreeProxy}};
        if (c.measuredDegree >= 0.0)
            row["measuredDegree"] = c.measuredDegree;
        else
            row["measuredDegree"] = nullptr;
        j["certificates"].push_back(std::move(row));
    }
    if (!wrapperInstances.empty()) {
        j["instances"] = json::array();
        for (const InstanceReport& r : wrapperInstances)
            j["instances"].push_back({{"guess", r.guess},
                                      {"buckets", r.buckets},
                                      {"reportedSize", r.reportedSize},
                                      {"active", r.active}});
    }
    j["notes"] = notes;
    j["totals"] = {{"matrixProbes", totals.matrixProbes},
                   {"listReads", totals.listReads},
                   {"rebuilds", totals.rebuilds},
                   {"phaseResets", totals.phaseResets},
                   {"updates", totals.updates},
                   {"amortizedMatrixProbesPerUpdate", totals.amortizedMatrixProbesPerUpdate},
                   {"amortizedListReadsPerUpdate", totals.amortizedListReadsPerUpdate}};
    j["guarantee"] = {{"kind", guarantee.kind},
                      {"bound", guarantee.bound},
                      {"violations", guarantee.violations},
                      {"holds", guarantee.holds}};
    return j;
}

std::string RunReport::toCsv() const {
    std::ostringstream os;
    os << "updateIndex,engineSize,oracleSize,additiveGap,ratio,atRebuild,oracleSkipped\n";
    for (const CheckpointRecord& c : checkpoints) {
        os << c.updateIndex << "," << c.engineSize << "," << c.oracleSize << ","
           << c.additiveGap << ",";
        if (c.oracleSize > 0)
            os << c.ratio;
        os << "," << (c.atRebuild ? 1 : 0) << "," << (c.oracleSkipped ? 1 : 0) << "\n";
    }
    return os.str();
}

json reportSchemaDescription() {
    return json{
        {"schemaVersion", "integer"},
        {"meta", {{"generatedAt", "string (volatile)"}, {"wallMillis", "number (volatile)"}}},
        {"config",
         {{"engine", "string"},
          {"n", "integer"},
          {"epsilon", "number"},
          {"threshold", "integer"},
          {"rebuildPeriod", "integer"},
          {"seed", "integer"},
          {"checkEvery", "integer"},
          {"measureDegree", "boolean"},
          {"stream", "string"}}},
        {"checkpoints",
         {{"updateIndex", "integer"},
          {"engineSize", "integer"},
          {"oracleSize", "integer (-1 = skipped)"},
          {"additiveGap", "integer"},
          {"ratio", "number or null"},
          {"atRebuild", "boolean"},
          {"oracleSkipped", "boolean"}}},
        {"phases",
         {{"phaseIndex", "integer"},
          {"rebuilds", "integer"},
          {"certificates", "integer"},
          {"sumInverseD", "number"}}},
        {"certificates",
         {{"rebuildIndex", "integer"},
          {"phaseIndex", "integer"},
          {"size", "integer"},
          {"degreeProxy", "number"},
          {"measuredDegree", "number or null"}}},
        {"notes", "array of strings"},
        {"totals",
         {{"matrixProbes", "integer"},
          {"listReads", "integer"},
          {"rebuilds", "integer"},
          {"phaseResets", "integer"},
          {"updates", "integer"},
          {"amortizedMatrixProbesPerUpdate", "number"},
          {"amortizedListReadsPerUpdate", "number"}}},
        {"guarantee",
         {{"kind", "string"},
          {"bound", "number"},
          {"violations", "integer"},
          {"holds", "boolean"}}}};
}

namespace {

void requireKeys(const json& j, const std::string& where,
                 std::initializer_list<const char*> keys,
                 std::vector<std::string>& problems) {
    for (const char* k : keys)
        if (!j.contains(k)) problems.push_back(where + ": missing key '" + k + "'");
}

} // namespace

std::vector<std::string> validateRunReport(const json& j) {
    std::vector<std::string> problems;
    if (!j.is_object()) {
        problems.push_back("report: not a JSON object");
        return problems;
    }
    requireKeys(j, "report",
                {"schemaVersion", "config", "checkpoints", "phases", "certificates",
                 "notes", "totals", "guarantee"},
                problems);
    if (!problems.empty()) return problems;

    if (!j["schemaVersion"].is_number_integer() || j["schemaVersion"].get<int>() != 1)
        problems.push_back("schemaVersion: expected 1");
    requireKeys(j["config"], "config",
                {"engine", "n", "epsilon", "threshold", "rebuildPeriod", "seed",
                 "checkEvery", "measureDegree", "stream"},
                problems);
    if (!j["checkpoints"].is_array()) problems.push_back("checkpoints: expected array");
    for (const auto& c : j["checkpoints"]) {
        requireKeys(c, "checkpoint",
                    {"updateIndex", "engineSize", "oracleSize", "additiveGap", "ratio",
                     "atRebuild", "oracleSkipped"},
                    problems);
        if (!problems.empty()) break;
        long long oracle = c["oracleSize"].get<long long>();
        long long engine = c["engineSize"].get<long long>();
        if (!c["oracleSkipped"].get<bool>() &&
            c["additiveGap"].get<long long>() != oracle - engine)
            problems.push_back("checkpoint " + c["updateIndex"].dump() +
                               ": additiveGap != oracleSize - engineSize");
        if (oracle > 0 && c["ratio"].is_null())
            problems.push_back("checkpoint " + c["updateIndex"].dump() +
                               ": missing ratio despite positive oracle size");
    }
    if (!j["phases"].is_array()) problems.push_back("phases: expected array");
    for (const auto& p : j["phases"])
        requireKeys(p, "phase", {"phaseIndex", "rebuilds", "certificates", "sumInverseD"},
                    problems);
    for (const auto& c : j["certificates"])
        requireKeys(c, "certificate",
                    {"rebuildIndex", "phaseIndex", "size", "degreeProxy", "measuredDegree"},
                    problems);
    requireKeys(j["totals"], "totals",
                {"matrixProbes", "listReads", "rebuilds", "phaseResets", "updates",
                 "amortizedMatrixProbesPerUpdate", "amortizedListReadsPerUpdate"},
                problems);
    requireKeys(j["guarantee"], "guarantee", {"kind", "bound", "violations", "holds"},
                problems);
    return problems;
}

} // namespace dynmatch
