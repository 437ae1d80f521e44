#include "qocd/communities.hpp"
#include "qocd/error.hpp"
#include "qocd/synth.hpp"
#include "qocd/weighting.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

using namespace qocd;

namespace {

Covering from_text(const std::string& text, std::vector<UserId> universe)
{
    std::istringstream in(text);
    return import_covering(in, std::move(universe));
}

std::string to_text(const Covering& c)
{
    std::ostringstream out;
    export_covering(out, c);
    return out.str();
}

std::set<std::set<UserId>> as_sets(const Covering& c)
{
    std::set<std::set<UserId>> out;
    for (const auto& m : c.communities()) {
        std::set<UserId> s;
        for (NodeIndex i : m) s.insert(c.id(i));
        out.insert(s);
    }
    return out;
}

WeightedDigraph weighted(const std::vector<std::tuple<UserId, UserId, double>>& edges, std::vector<UserId> extra = {})
{
    std::vector<std::pair<UserId, UserId>> pairs;
    for (const auto& [s, t, w] : edges) {
        pairs.emplace_back(s, t);
        extra.push_back(s);
        extra.push_back(t);
    }
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    StructuralGraph g(extra, pairs);
    WeightedDigraph wg{g, "test", std::vector<double>(g.edge_count(), 0.0)};
    for (const auto& [s, t, w] : edges) wg.weights[*g.edge_index(*g.find(s), *g.find(t))] = w;
    return wg;
}

} // namespace

TEST_CASE("covering import")
{
    const std::vector<UserId> abcde{"a", "b", "c", "d", "e"};
    SUBCASE("two communities and a singleton")
    {
        auto c = from_text("a b c\nc d\n", abcde);
        CHECK(c.community_count() == 2);
        CHECK(c.singleton_count() == 1);
        CHECK(c.id(c.singletons()[0]) == "e");
        CHECK(c.memberships(*c.find("c")).size() == 2);
        CHECK(c.memberships(*c.find("e"))[0] == 2);
        CHECK(to_text(from_text(to_text(c), abcde)) == to_text(c));
    }
    SUBCASE("empty file")
    {
        auto c = from_text("", {"a", "b"});
        CHECK(c.community_count() == 0);
        CHECK(c.singleton_count() == 2);
        CHECK(to_text(from_text(to_text(c), {"a", "b"})) == to_text(c));
    }
    SUBCASE("member outside the universe")
    {
        CHECK_THROWS_AS(from_text("a b\n", {"a"}), DataError);
    }
    SUBCASE("comments, duplicates and single members")
    {
        auto c = from_text("# header\na b\nb a\nc\n", abcde);
        CHECK(c.community_count() == 1);
        CHECK(c.singleton_count() == 3);
    }
    SUBCASE("membership totality")
    {
        auto c = from_text("a b c\nc d\n", abcde);
        for (NodeIndex i = 0; i < c.universe_size(); ++i) CHECK(c.memberships(i).size() >= 1);
    }
}

TEST_CASE("covering statistics")
{
    std::vector<UserId> u;
    std::vector<std::vector<UserId>> comms;
    for (int i = 0; i < 201; ++i) {
        const auto a = "c" + std::to_string(i) + "a", b = "c" + std::to_string(i) + "b";
        u.push_back(a);
        u.push_back(b);
        comms.push_back({a, b});
    }
    for (int i = 0; i < 308; ++i) u.push_back("s" + std::to_string(i));
    auto s = covering_stats(Covering(u, comms));
    CHECK(s.communities == 201);
    CHECK(s.singletons == 308);

    const std::vector<UserId> five{"a", "b", "c", "d", "e"};
    CHECK(covering_stats(Covering(five, {})).singletons == 5);
    CHECK(covering_stats(Covering(five, {five})).communities == 1);
    CHECK(covering_stats(Covering(five, {five})).singletons == 0);
}

TEST_CASE("detector on hand-sized graphs")
{
    SUBCASE("two disjoint triangles")
    {
        auto wg = weighted({{"a", "b", 1}, {"b", "c", 1}, {"c", "a", 1}, {"x", "y", 2}, {"y", "z", 2}, {"z", "x", 2}});
        auto c = detect_overlapping(wg);
        CHECK(as_sets(c) == std::set<std::set<UserId>>{{"a", "b", "c"}, {"x", "y", "z"}});
        CHECK(c.singleton_count() == 0);

        // exhaustive check: nothing beats a triangle's fitness
        const double best = community_fitness(wg, c.communities()[0]);
        for (unsigned mask = 1; mask < 64; ++mask) {
            std::vector<NodeIndex> s;
            for (NodeIndex i = 0; i < 6; ++i)
                if (mask & (1u << i)) s.push_back(i);
            CHECK(community_fitness(wg, s) <= best + 1e-15);
        }
    }
    SUBCASE("single weighted edge")
    {
        auto wg = weighted({{"u", "f", 1.0}, {"p", "q", 0.0}}, {"lone"});
        auto c = detect_overlapping(wg);
        CHECK(as_sets(c) == std::set<std::set<UserId>>{{"f", "u"}});
        CHECK(c.singleton_count() == 3);
    }
    SUBCASE("all weights zero")
    {
        auto wg = weighted({{"u", "f", 0.0}, {"f", "u", 0.0}});
        CHECK_FALSE(has_positive_weight(wg));
        auto c = detect_overlapping(wg);
        CHECK(c.community_count() == 0);
        CHECK(c.singleton_count() == 2);
    }
    CHECK_THROWS_AS(detect_overlapping(weighted({{"a", "b", 1}}), {0.0}), std::invalid_argument);
}

namespace {

WeightedDigraph random_weighted(std::uint64_t seed, const std::string& prefix = "n")
{
    SynthConfig cfg;
    cfg.nodes = 60;
    cfg.communities = 4;
    cfg.bins = 200;
    cfg.leaders_per_community = 2;
    cfg.seed = seed;
    auto data = generate(cfg);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> w(0.0, 1.0);
    std::vector<std::tuple<UserId, UserId, double>> edges;
    for (auto e : data.graph.edges()) {
        const double x = w(rng);
        edges.emplace_back(prefix + data.graph.id(e.source), prefix + data.graph.id(e.target), x < 0.2 ? 0.0 : x);
    }
    return weighted(edges);
}

} // namespace

TEST_CASE("detected communities are local fitness maxima")
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto wg = random_weighted(seed);
        const auto c = detect_overlapping(wg);
        CHECK(c.community_count() > 0);
        for (const auto& members : c.communities()) {
            const double f = community_fitness(wg, members);
            std::set<NodeIndex> in(members.begin(), members.end());
            for (NodeIndex v = 0; v < wg.graph.node_count(); ++v) {
                std::vector<NodeIndex> alt;
                if (in.contains(v)) {
                    for (NodeIndex m : members)
                        if (m != v) alt.push_back(m);
                } else {
                    alt = members;
                    alt.push_back(v);
                }
                CHECK(community_fitness(wg, alt) <= f + 1e-9);
            }
        }
    }
}

TEST_CASE("detector is equivariant under order-preserving relabeling")
{
    const auto a = detect_overlapping(random_weighted(5, "n"));
    const auto b = detect_overlapping(random_weighted(5, "m_"));
    REQUIRE(a.community_count() == b.community_count());
    for (std::size_t i = 0; i < a.community_count(); ++i) {
        REQUIRE(a.communities()[i].size() == b.communities()[i].size());
        for (std::size_t j = 0; j < a.communities()[i].size(); ++j) {
            CHECK("m_" + a.id(a.communities()[i][j]).substr(1) == b.id(b.communities()[i][j]));
        }
    }
}

TEST_CASE("detector is deterministic")
{
    const auto wg = random_weighted(8);
    CHECK(to_text(detect_overlapping(wg)) == to_text(detect_overlapping(wg)));
}
