#include "qocd/activity.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace qocd;

namespace {

Event post(const std::string& a, std::int64_t ts) { return {EventKind::Post, a, ts, std::nullopt, {}}; }

} // namespace

TEST_CASE("coarsen")
{
    const ActivityOptions opts{600, true};
    SUBCASE("two posts in two bins")
    {
        EventLog log{{post("u", 0), post("u", 650)}, 0};
        auto s = coarsen(log, "u", opts, {0, 1199});
        CHECK(s.bins == std::vector<std::uint8_t>{1, 1});
    }
    SUBCASE("no posts")
    {
        auto s = coarsen(EventLog{}, "u", opts, {0, 5999});
        CHECK(s.bins == std::vector<std::uint8_t>(10, 0));
    }
    SUBCASE("nine weeks of ten-minute bins")
    {
        CHECK(bin_count({0, 9 * 604800 - 1}, 600) == 9072);
        CHECK(coarsen(EventLog{}, "u", opts, {0, 9 * 604800 - 1}).bins.size() == 9072);
    }
    SUBCASE("retweets count only when enabled")
    {
        EventLog log{{{EventKind::Retweet, "u", 5, "v", {}}, {EventKind::Mention, "u", 700, "v", {}}}, 0};
        CHECK(coarsen(log, "u", opts, {0, 1199}).bins == std::vector<std::uint8_t>{1, 0});
        CHECK(coarsen(log, "u", {600, false}, {0, 1199}).bins == std::vector<std::uint8_t>{0, 0});
    }
    CHECK_THROWS_AS(coarsen(EventLog{}, "u", {0, true}, {0, 10}), std::invalid_argument);
}

TEST_CASE("binning invariants")
{
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::int64_t> ts(0, 60000);
    EventLog log;
    for (int i = 0; i < 300; ++i) log.events.push_back(post(i % 2 ? "a" : "b", ts(rng)));
    const ActivityOptions opts{600, true};
    const TimeWindow w = default_window(log, 600);
    CHECK(w.origin % 600 == 0);

    auto base = coarsen(log, "a", opts, w);

    EventLog doubled = log;
    for (const auto& e : log.events) doubled.events.push_back(e);
    CHECK(coarsen(doubled, "a", opts, w).bins == base.bins);

    EventLog shifted = log;
    for (auto& e : shifted.events) e.ts += 123456;
    CHECK(coarsen(shifted, "a", opts, {w.origin + 123456, w.end + 123456}).bins == base.bins);

    const auto ones = std::accumulate(base.bins.begin(), base.bins.end(), 0u);
    CHECK(ones <= 150u);
    for (auto v : base.bins) CHECK(v <= 1);
}

TEST_CASE("batch_coarsen")
{
    EventLog log{{post("a", 10), post("z", 20)}, 0};
    const ActivityOptions opts{600, true};
    auto empty = batch_coarsen(log, StructuralGraph{}, opts, {0, 1199});
    CHECK(empty.empty());

    auto g = StructuralGraph::from_edges({{"a", "b"}});
    auto all = batch_coarsen(log, g, opts, {0, 1199});
    REQUIRE(all.size() == 2);
    CHECK(all.at("a").bins == coarsen(log, "a", opts, {0, 1199}).bins);
    CHECK(all.at("b").bins == std::vector<std::uint8_t>{0, 0});
    for (const auto& [id, s] : all) {
        CHECK(s.origin == 0);
        CHECK(s.bin_width == 600);
        CHECK(s.bins.size() == 2);
    }
}
