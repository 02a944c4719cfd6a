#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "dynmatch/bench.hpp"
#include "dynmatch/oracle.hpp"
#include "dynmatch/ors.hpp"

using namespace dynmatch;

namespace {

void writeTextFile(const std::string& path, const std::string& body) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << body;
}

int cmdGen(const std::string& workload, std::size_t n, std::size_t steps,
           double insertBias, std::size_t window, const std::string& orsFile,
           std::uint64_t seed, const std::string& out) {
    UpdateStream stream;
    if (workload == "random") {
        Rng rng(seed);
        stream = randomStreamGen(n, steps, insertBias, rng);
    } else if (workload == "churn") {
        Rng rng(seed);
        stream = churnStreamGen(n, steps, window, rng);
    } else if (workload == "hard-ors") {
        if (orsFile.empty()) throw InvalidArgument("hard-ors workload needs --ors-file");
        HardSequence hs = hardSequenceGen(loadInstance(orsFile));
        stream = std::move(hs.stream);
    } else {
        throw InvalidArgument("unknown workload: " + workload);
    }
    saveUpdateStream(out, stream);
    std::cout << "wrote " << stream.events.size() << " events on n=" << stream.n
              << " to " << out << "\n";
    return 0;
}

int cmdRun(const std::string& streamPath, const std::string& engine, double epsilon,
           std::size_t threshold, std::size_t rebuildPeriod, std::uint64_t seed,
           std::size_t checkEvery, bool measureD, const std::string& reportPath,
           const std::string& csvPath) {
    UpdateStream stream = loadUpdateStream(streamPath);
    BenchConfig cfg;
    cfg.kind = parseEngineKind(engine);
    cfg.epsilon = epsilon;
    cfg.threshold = threshold;
    cfg.rebuildPeriod = rebuildPeriod;
    cfg.seed = seed;
    cfg.checkEvery = checkEvery;
    cfg.measureDegree = measureD;
    cfg.streamLabel = streamPath;

    RunReport report = runBench(stream, cfg);
    if (!reportPath.empty()) writeTextFile(reportPath, report.toJson().dump(2) + "\n");
    if (!csvPath.empty()) writeTextFile(csvPath, report.toCsv());

    std::cout << "engine=" << report.config.engine << " updates=" << report.totals.updates
              << " checkpoints=" << report.checkpoints.size()
              << " rebuilds=" << report.totals.rebuilds
              << " matrixProbes=" << report.totals.matrixProbes
              << " listReads=" << report.totals.listReads << "\n";
    if (!report.checkpoints.empty()) {
        const CheckpointRecord& last = report.checkpoints.back();
        std::cout << "final matching=" << last.engineSize << " oracle=" << last.oracleSize
                  << "\n";
    }
    std::cout << "guarantee[" << report.guarantee.kind << "] "
              << (report.guarantee.holds ? "holds" : "VIOLATED") << " ("
              << report.guarantee.violations << " violations)\n";
    return report.guarantee.holds ? 0 : 1;
}

int cmdCompare(const std::string& streamPath, const std::vector<std::string>& engines,
               double epsilon, std::size_t threshold, std::size_t rebuildPeriod,
               std::uint64_t seed, std::size_t checkEvery, bool measureD,
               const std::string& reportPath) {
    UpdateStream stream = loadUpdateStream(streamPath);
    std::vector<BenchConfig> cfgs;
    for (const std::string& e : engines) {
        BenchConfig c;
        c.kind = parseEngineKind(e);
        c.epsilon = epsilon;
        c.threshold = threshold;
        c.rebuildPeriod = rebuildPeriod;
        c.seed = seed;
        c.checkEvery = checkEvery;
        c.measureDegree = measureD;
        c.streamLabel = streamPath;
        cfgs.push_back(c);
    }
    std::vector<RunReport> reports = compareEngines(stream, cfgs);
    if (!reportPath.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const RunReport& r : reports) arr.push_back(r.toJson());
        writeTextFile(reportPath, arr.dump(2) + "\n");
    }
    bool allHold = true;
    for (const RunReport& r : reports) {
        const auto* last = r.checkpoints.empty() ? nullptr : &r.checkpoints.back();
        std::cout << r.config.engine << ": final=" << (last ? last->engineSize : 0)
                  << " oracle=" << (last ? last->oracleSize : -1)
                  << " probes/update=" << r.totals.amortizedMatrixProbesPerUpdate
                  << " reads/update=" << r.totals.amortizedListReadsPerUpdate
                  << " guarantee=" << (r.guarantee.holds ? "holds" : "VIOLATED") << "\n";
        allHold = allHold && r.guarantee.holds;
    }
    return allHold ? 0 : 1;
}

int cmdVerifyOrs(const std::string& file, bool asRs) {
    OrderedMatchingInstance inst = loadInstance(file);
    auto violation = asRs ? verifyRS(inst) : verifyORS(inst);
    if (!violation) {
        std::cout << "Valid " << (asRs ? "RS" : "ORS") << " instance: n=" << inst.n
                  << " r=" << inst.r << " t=" << inst.t()
                  << " maxPairwiseOverlap=" << pairwiseOverlapMax(inst) << "\n";
        return 0;
    }
    std::cout << "Invalid: " << describe(*violation) << "\n";
    return 1;
}

int cmdPackOrs(std::size_t n, std::size_t r, std::size_t attempts, std::uint64_t seed,
               const std::string& out) {
    Rng rng(seed);
    OrderedMatchingInstance inst = greedyORSPack(n, r, attempts, rng);
    saveInstance(out, inst);
    std::cout << "packed t=" << inst.t() << " matchings of size " << r << " on n=" << n
              << " to " << out << "\n";
    return 0;
}

int cmdOracle(const std::string& graphPath) {
    UpdateStream stream = loadUpdateStream(graphPath);
    DynamicGraph g(stream.n);
    for (const UpdateEvent& ev : stream.events) {
        if (ev.kind == UpdateEvent::Kind::Insert)
            g.applyInsert(ev.edge);
        else
            g.applyDelete(ev.edge);
    }
    OracleResult res = exactMatching(stream.n, g.edges());
    std::cout << "size " << res.size << "\n";
    for (const Edge& e : res.matching.edges()) std::cout << e.u << " " << e.v << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynmatch: fully dynamic approximate maximum matching toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an update stream");
    std::string genWorkload = "random", genOut, genOrsFile;
    std::size_t genN = 100, genSteps = 1000, genWindow = 50;
    double genBias = 0.6;
    std::uint64_t genSeed = 0;
    gen->add_option("--workload", genWorkload, "random|churn|hard-ors")
        ->check(CLI::IsMember({"random", "churn", "hard-ors"}));
    gen->add_option("--n", genN, "vertex count (random/churn)");
    gen->add_option("--steps", genSteps, "number of events");
    gen->add_option("--insert-bias", genBias, "insert probability (random)");
    gen->add_option("--window", genWindow, "live-edge window (churn)");
    gen->add_option("--ors-file", genOrsFile, "packed instance (hard-ors)");
    gen->add_option("--seed", genSeed)->envname("DYNMATCH_SEED");
    gen->add_option("--out", genOut, "output stream file")->required();

    // run
    auto* run = app.add_subcommand("run", "replay a stream through one engine");
    std::string runStream, runEngine = "ors", runReport, runCsv;
    double runEps = 0.1;
    std::size_t runThreshold = 0, runPeriod = 0, runCheckEvery = 0;
    std::uint64_t runSeed = 0;
    bool runMeasureD = false;
    bool runMultiplicative = false;
    run->add_option("--stream", runStream)->required();
    run->add_option("--engine", runEngine, "ors|ors-multiplicative|maximal|rebuild")
        ->check(CLI::IsMember({"ors", "ors-multiplicative", "maximal", "rebuild"}));
    run->add_flag("--multiplicative", runMultiplicative,
                  "shorthand for --engine ors-multiplicative");
    run->add_option("--epsilon", runEps);
    run->add_option("--threshold", runThreshold, "phase length (0 = ceil(n^1.5))");
    run->add_option("--rebuild-period", runPeriod, "0 = max(1, floor(eps*n/2))");
    run->add_option("--seed", runSeed)->envname("DYNMATCH_SEED");
    run->add_option("--check-every", runCheckEvery, "extra oracle checkpoints");
    run->add_flag("--measure-d", runMeasureD, "probe true certificate degree");
    run->add_option("--report", runReport, "JSON report path");
    run->add_option("--csv", runCsv, "CSV checkpoint table path");

    // compare
    auto* cmp = app.add_subcommand("compare", "run several engines on one stream");
    std::string cmpStream, cmpReport;
    std::vector<std::string> cmpEngines{"ors", "rebuild"};
    double cmpEps = 0.1;
    std::size_t cmpThreshold = 0, cmpPeriod = 0, cmpCheckEvery = 0;
    std::uint64_t cmpSeed = 0;
    bool cmpMeasureD = false;
    cmp->add_option("--stream", cmpStream)->required();
    cmp->add_option("--engines", cmpEngines, "engine kinds")->delimiter(',');
    cmp->add_option("--epsilon", cmpEps);
    cmp->add_option("--threshold", cmpThreshold);
    cmp->add_option("--rebuild-period", cmpPeriod);
    cmp->add_option("--seed", cmpSeed)->envname("DYNMATCH_SEED");
    cmp->add_option("--check-every", cmpCheckEvery);
    cmp->add_flag("--measure-d", cmpMeasureD);
    cmp->add_option("--report", cmpReport, "JSON report path (array)");

    // verify-ors
    auto* ver = app.add_subcommand("verify-ors", "verify an ordered-matching instance");
    std::string verFile;
    bool verRs = false;
    ver->add_option("--file", verFile)->required();
    ver->add_flag("--rs", verRs, "check the plain (unordered) property");

    // pack-ors
    auto* pack = app.add_subcommand("pack-ors", "greedily pack a valid instance");
    std::size_t packN = 50, packR = 10, packAttempts = 500;
    std::uint64_t packSeed = 0;
    std::string packOut;
    pack->add_option("--n", packN)->required();
    pack->add_option("--r", packR)->required();
    pack->add_option("--attempts", packAttempts, "consecutive-rejection cap");
    pack->add_option("--seed", packSeed)->envname("DYNMATCH_SEED");
    pack->add_option("--out", packOut)->required();

    // oracle
    auto* orc = app.add_subcommand("oracle", "exact maximum matching of a stream's final graph");
    std::string orcGraph;
    orc->add_option("--graph", orcGraph, "update-stream file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmdGen(genWorkload, genN, genSteps, genBias, genWindow, genOrsFile,
                          genSeed, genOut);
        if (run->parsed())
            return cmdRun(runStream, runMultiplicative ? "ors-multiplicative" : runEngine,
                          runEps, runThreshold, runPeriod, runSeed, runCheckEvery,
                          runMeasureD, runReport, runCsv);
        if (cmp->parsed())
            return cmdCompare(cmpStream, cmpEngines, cmpEps, cmpThreshold, cmpPeriod,
                              cmpSeed, cmpCheckEvery, cmpMeasureD, cmpReport);
        if (ver->parsed()) return cmdVerifyOrs(verFile, verRs);
        if (pack->parsed()) return cmdPackOrs(packN, packR, packAttempts, packSeed, packOut);
        if (orc->parsed()) return cmdOracle(orcGraph);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
