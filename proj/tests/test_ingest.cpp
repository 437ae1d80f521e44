#include "qocd/error.hpp"
#include "qocd/ingest.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace qocd;

namespace {

EventLog parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_events(in);
}

Event mention(const std::string& a, const std::string& b, std::int64_t ts = 0)
{
    return {EventKind::Mention, a, ts, b, {}};
}

Event retweet(const std::string& by, const std::string& of, std::int64_t ts = 0)
{
    return {EventKind::Retweet, by, ts, of, {}};
}

// Reachability by repeated relaxation, fine for desk-scale graphs.
bool strongly_connected(const StructuralGraph& g)
{
    const std::size_t n = g.node_count();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (auto e : g.edges()) reach[e.source][e.target] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!reach[i][j]) return false;
    return true;
}

} // namespace

TEST_CASE("structural graph invariants")
{
    auto g = StructuralGraph::from_edges({{"b", "a"}, {"a", "b"}, {"a", "b"}, {"c", "a"}});
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.id(0) == "a");
    CHECK(g.out_edges(*g.find("a")).size() == 1);
    CHECK(g.edge_index(*g.find("c"), *g.find("a")).has_value());
    CHECK_FALSE(g.edge_index(*g.find("a"), *g.find("c")).has_value());
    CHECK_THROWS_AS(StructuralGraph::from_edges({{"a", "a"}}), DataError);
    CHECK_THROWS_AS(StructuralGraph({"a"}, {{"a", "z"}}), DataError);
}

TEST_CASE("parse_events")
{
    SUBCASE("mention record")
    {
        auto log = parse(R"({"kind":"mention","actor":"a","ts":10,"target":"b"})");
        REQUIRE(log.events.size() == 1);
        CHECK(log.events[0] == mention("a", "b", 10));
        CHECK(log.skipped_lines == 0);
    }
    SUBCASE("empty input")
    {
        auto log = parse("");
        CHECK(log.events.empty());
        CHECK(log.skipped_lines == 0);
    }
    SUBCASE("mention without target is skipped")
    {
        auto log = parse(R"({"kind":"mention","actor":"a","ts":10})");
        CHECK(log.events.empty());
        CHECK(log.skipped_lines == 1);
    }
    SUBCASE("other malformed lines")
    {
        auto log = parse("not json\n"
                         R"({"kind":"post","actor":"a","ts":-1})" "\n"
                         R"({"kind":"post","actor":"a","ts":3,"target":"b"})" "\n"
                         R"({"kind":"like","actor":"a","ts":3})" "\n"
                         R"({"kind":"post","actor":"a","ts":3,"hashtags":["bad tag"]})" "\n"
                         "\n"
                         R"({"kind":"post","actor":"a","ts":4,"hashtags":["#Green","eco"]})" "\n");
        CHECK(log.skipped_lines == 5);
        REQUIRE(log.events.size() == 1);
        CHECK(log.events[0].hashtags == std::vector<std::string>{"green", "eco"});
    }
    SUBCASE("format round trip")
    {
        Event e{EventKind::Post, "u1", 77, std::nullopt, {"a", "b"}};
        auto log = parse(format_event(e) + "\n" + format_event(retweet("x", "y", 5)));
        REQUIRE(log.events.size() == 2);
        CHECK(log.events[0] == e);
        CHECK(log.events[1] == retweet("x", "y", 5));
    }
}

TEST_CASE("parse_follows")
{
    std::istringstream ok("followee,follower\na,b\nb,a\nc,c\nbroken\n");
    auto f = parse_follows(ok);
    CHECK(f.edges.size() == 2);
    CHECK(f.skipped_lines == 2);

    std::istringstream bad("a,b\n");
    CHECK_THROWS_AS(parse_follows(bad), DataError);
}

TEST_CASE("count_information_events")
{
    auto g = StructuralGraph::from_edges({{"u", "v"}, {"v", "u"}});
    SUBCASE("one mention")
    {
        auto c = count_information_events({{mention("u", "v")}, 0}, g);
        CHECK(c.at("u") == InfoTally{1, 0});
        CHECK(c.at("v") == InfoTally{0, 1});
    }
    SUBCASE("v retweets u")
    {
        auto c = count_information_events({{retweet("v", "u")}, 0}, g);
        CHECK(c.at("u") == InfoTally{1, 0});
        CHECK(c.at("v") == InfoTally{0, 1});
    }
    SUBCASE("out-of-network and self targets are ignored")
    {
        auto c = count_information_events({{mention("u", "zz"), mention("u", "u"), retweet("zz", "v")}, 0}, g);
        CHECK(c.at("u") == InfoTally{0, 0});
        CHECK(c.at("v") == InfoTally{0, 0});
    }
}

TEST_CASE("filter_active")
{
    auto g = StructuralGraph::from_edges({{"a", "b"}, {"b", "a"}, {"b", "c"}});
    InfoEventCounts counts{{"a", {9, 9}}, {"b", {9, 8}}, {"c", {20, 20}}};
    auto r = filter_active(g, counts, 9);
    CHECK(r.report.kept == std::vector<UserId>{"a", "c"});
    CHECK(r.report.removed_inactive == std::vector<UserId>{"b"});
    CHECK(r.graph.edge_count() == 0);

    auto again = filter_active(r.graph, counts, 9);
    CHECK(again.graph == r.graph);

    CHECK(filter_active(g, counts, 0).graph == g);
}

TEST_CASE("giant_scc")
{
    SUBCASE("cycle plus dangling edge")
    {
        auto r = giant_scc(StructuralGraph::from_edges({{"a", "b"}, {"b", "a"}, {"c", "d"}}));
        CHECK(r.report.kept == std::vector<UserId>{"a", "b"});
        CHECK(r.report.removed_not_in_gscc == std::vector<UserId>{"c", "d"});
    }
    SUBCASE("fully cyclic graph unchanged")
    {
        auto g = StructuralGraph::from_edges({{"a", "b"}, {"b", "c"}, {"c", "a"}, {"a", "c"}});
        CHECK(giant_scc(g).graph == g);
    }
    SUBCASE("tie goes to the component holding the smaller id")
    {
        auto r = giant_scc(StructuralGraph::from_edges({{"d", "c"}, {"c", "d"}, {"b", "a"}, {"a", "b"}, {"b", "c"}}));
        CHECK(r.report.kept == std::vector<UserId>{"a", "b"});
    }
    SUBCASE("empty graph")
    {
        CHECK_THROWS_AS(giant_scc(StructuralGraph{}), DataError);
    }
    SUBCASE("random graphs give a strongly connected result of maximal size")
    {
        std::mt19937_64 rng(4);
        std::bernoulli_distribution coin(0.08);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::pair<UserId, UserId>> edges;
            std::vector<UserId> nodes;
            for (int i = 0; i < 25; ++i) nodes.push_back("n" + std::to_string(100 + i));
            for (auto& a : nodes)
                for (auto& b : nodes)
                    if (a != b && coin(rng)) edges.emplace_back(a, b);
            StructuralGraph g(nodes, edges);
            auto r = giant_scc(g);
            CHECK(strongly_connected(r.graph));
            // no kept set can be extended by a node that is mutually reachable
            std::vector<bool> keep(g.node_count(), false);
            for (auto& id : r.report.kept) keep[*g.find(id)] = true;
            for (NodeIndex v = 0; v < g.node_count(); ++v) {
                if (keep[v]) continue;
                auto k2 = keep;
                k2[v] = true;
                CHECK_FALSE(strongly_connected(g.induced(k2)));
            }
        }
    }
}

TEST_CASE("ingest_network keeps per-type active users in the giant SCC")
{
    std::vector<Event> ev;
    auto g = StructuralGraph::from_edges({{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}, {"c", "x"}});
    for (int i = 0; i < 9; ++i) {
        ev.push_back(mention("a", "b"));
        ev.push_back(mention("b", "c"));
        ev.push_back(mention("c", "a"));
        ev.push_back(mention("x", "a"));
    }
    auto r = ingest_network({ev, 0}, g, 9);
    CHECK(r.report.kept == std::vector<UserId>{"a", "b", "c"});
    CHECK(r.report.removed_inactive == std::vector<UserId>{"x"});
    const auto counts = count_information_events({ev, 0}, g);
    for (const auto& id : r.report.kept) {
        CHECK(counts.at(id).outgoing >= 9);
        CHECK(counts.at(id).incoming >= 9);
    }
    CHECK_THROWS_AS(ingest_network({ev, 0}, g, 100), DataError);
}

TEST_CASE("follow graph file round trip")
{
    testing::ScratchDir dir("ingest_io");
    auto g = StructuralGraph::from_edges({{"a", "b"}, {"b", "c"}, {"c", "a"}});
    write_follow_graph(g, dir / "f.csv");
    CHECK(read_follow_graph(dir / "f.csv") == g);
}
