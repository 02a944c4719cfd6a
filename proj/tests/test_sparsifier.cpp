#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dynmatch/ors.hpp"
#include "dynmatch/sparsifier.hpp"
#include "test_util.hpp"

using namespace dynmatch;
using namespace testutil;

TEST_CASE("identity contraction leaves edges alone") {
    ContractionMap id = ContractionMap::random(8, 8, 1);
    CHECK(contractEdge(id, Edge(2, 5)) == Edge(2, 5));
    ContractionMap big = ContractionMap::random(8, 100, 1);
    CHECK(big.buckets == 8); // k >= n collapses to identity
    CHECK(contractEdge(big, Edge(0, 7)) == Edge(0, 7));
}

TEST_CASE("collisions drop to nothing, distinct buckets map through") {
    ContractionMap m;
    m.buckets = 6;
    m.bucketOf = {3, 3, 2, 5, 0, 1};
    CHECK_FALSE(contractEdge(m, Edge(0, 1)).has_value()); // both in bucket 3
    CHECK(contractEdge(m, Edge(2, 3)) == Edge(2, 5));
    CHECK_THROWS_AS(contractEdge(m, Edge(0, 9)), InvalidVertex);
}

TEST_CASE("random maps are total and seeded") {
    ContractionMap a = ContractionMap::random(100, 10, 7);
    ContractionMap b = ContractionMap::random(100, 10, 7);
    ContractionMap c = ContractionMap::random(100, 10, 8);
    CHECK(a.bucketOf == b.bucketOf);
    CHECK(a.bucketOf != c.bucketOf);
    for (VertexId v : a.bucketOf) CHECK(v < 10);
}

TEST_CASE("wrapper lift is a valid matching over original edges") {
    const std::size_t n = 64;
    MatchingWrapper w(n, 0.25, 3);
    DynamicGraph shadow(n);
    Rng rng(3);
    // confine activity to 16 vertices so mu stays small
    UpdateStream s = randomStreamGen(16, 400, 0.6, rng);
    std::size_t at = 0;
    for (const UpdateEvent& ev : s.events) {
        w.applyUpdate(ev);
        if (ev.kind == UpdateEvent::Kind::Insert)
            shadow.applyInsert(ev.edge);
        else
            shadow.applyDelete(ev.edge);
        if (++at % 40 == 0) {
            Matching lifted = w.currentMatching();
            CHECK(isMatchingOf(lifted, n, shadow.edges()));
        }
    }
}

TEST_CASE("wrapper tracks the multiplicative guarantee on small-mu streams") {
    const std::size_t n = 64;
    const double eps = 0.25;
    MatchingWrapper w(n, eps, 11);
    DynamicGraph shadow(n);
    Rng rng(11);
    UpdateStream s = randomStreamGen(12, 300, 0.65, rng);
    std::size_t at = 0, checks = 0, good = 0;
    for (const UpdateEvent& ev : s.events) {
        w.applyUpdate(ev);
        if (ev.kind == UpdateEvent::Kind::Insert)
            shadow.applyInsert(ev.edge);
        else
            shadow.applyDelete(ev.edge);
        if (++at % 20 == 0) {
            std::size_t mu = maximumMatchingSize(n, shadow.edges());
            std::size_t got = w.currentMatching().size();
            ++checks;
            if (double(got) >= (1.0 - eps) * double(mu)) ++good;
            // hard floor
            CHECK(double(got) >= (1.0 - 2 * eps) * double(mu));
        }
    }
    CHECK(checks > 0);
    CHECK(double(good) >= 0.9 * double(checks));
}

TEST_CASE("instance reports expose the ladder") {
    MatchingWrapper w(32, 0.25, 1);
    auto reports = w.instanceReports();
    REQUIRE(reports.size() >= 4); // guesses 1,2,4,8,16
    CHECK(reports[0].guess == 1);
    for (std::size_t i = 1; i < reports.size(); ++i)
        CHECK(reports[i].guess == 2 * reports[i - 1].guess);
    for (const InstanceReport& r : reports) CHECK(r.buckets <= 32);
    w.applyUpdate(UpdateEvent::insert(Edge(0, 1)));
    reports = w.instanceReports();
    std::size_t activeCount = 0;
    for (const InstanceReport& r : reports) activeCount += r.active ? 1 : 0;
    CHECK(activeCount == 1);
}

TEST_CASE("single edge lifts back exactly") {
    MatchingWrapper w(16, 0.3, 5);
    w.applyUpdate(UpdateEvent::insert(Edge(3, 9)));
    Matching m = w.currentMatching();
    // unless every instance contracted (3,9) to a self-loop, the lift is the edge
    if (!m.empty()) {
        CHECK(m.size() == 1);
        CHECK(m.contains(Edge(3, 9)));
    }
    w.applyUpdate(UpdateEvent::remove(Edge(3, 9)));
    CHECK(w.currentMatching().empty());
}

TEST_CASE("wrapper validates its inputs") {
    CHECK_THROWS_AS(MatchingWrapper(1, 0.25, 0), ConfigError);
    CHECK_THROWS_AS(MatchingWrapper(16, 0.0, 0), ConfigError);
}

TEST_CASE("wrapper reaches (1-eps) of a hidden 8-edge matching on n=256") {
    const std::size_t n = 256;
    const double eps = 0.25;
    // an 8-edge matching buried among blockers hanging off one endpoint
    std::vector<Edge> edges;
    for (VertexId i = 0; i < 8; ++i) {
        edges.push_back(Edge(i, 100 + i));
        edges.push_back(Edge(100 + i, 200 + i)); // blocker sharing a vertex
    }
    CHECK(maximumMatchingSize(n, edges) == 8);
    MatchingWrapper w(n, eps, 2);
    for (const Edge& e : edges) w.applyUpdate(UpdateEvent::insert(e));
    CHECK(double(w.currentMatching().size()) >= (1.0 - eps) * 8.0); // >= 6
    CHECK(isMatchingOf(w.currentMatching(), n, edges));
}
