#include "qocd/activity.hpp"
#include "qocd/compare.hpp"
#include "qocd/error.hpp"
#include "qocd/infotheory.hpp"
#include "qocd/synth.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

using namespace qocd;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Split {
    std::vector<double> influence;
    std::vector<double> other;
};

double mean(const std::vector<double>& v)
{
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double stdev(const std::vector<double>& v)
{
    const double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

Split te_by_influence(const SynthData& data, const SynthConfig& cfg)
{
    const ActivityOptions opts{cfg.bin_width, true};
    auto series = batch_coarsen(data.log, data.graph, opts, default_window(data.log, cfg.bin_width));
    auto table = pairwise_te(data.graph, series, 1, 4);
    std::set<std::pair<UserId, UserId>> planted(data.truth.influence_edges.begin(), data.truth.influence_edges.end());
    Split out;
    const auto edges = data.graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const bool inf = planted.contains({data.graph.id(edges[i].source), data.graph.id(edges[i].target)});
        (inf ? out.influence : out.other).push_back(table.raw[i]);
    }
    // spot-check the fast estimator against the brute-force one
    for (std::size_t i = 0; i < edges.size(); i += edges.size() / 10 + 1) {
        const auto& x = series.at(data.graph.id(edges[i].target)).bins;
        const auto& y = series.at(data.graph.id(edges[i].source)).bins;
        CHECK(table.raw[i] == doctest::Approx(oracle::transfer_entropy(x, y, 1)).epsilon(1e-10));
    }
    return out;
}

} // namespace

TEST_CASE("config validation and JSON")
{
    SynthConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    auto bad = cfg;
    bad.p_out = 0.5;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = cfg;
    bad.epsilon = 0.99;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = cfg;
    bad.p_in = 1.5;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    cfg.seed = 99;
    cfg.epsilon = 0.25;
    auto back = synth_config_from_json(nlohmann::json::parse(to_json(cfg).dump()));
    CHECK(to_json(back) == to_json(cfg));
    CHECK_THROWS_AS(synth_config_from_json(nlohmann::json{{"nodez", 3}}), DataError);
}

TEST_CASE("generated data respects its own invariants")
{
    SynthConfig cfg;
    cfg.nodes = 80;
    cfg.communities = 4;
    cfg.bins = 500;
    cfg.cross_influencers = 2;
    cfg.seed = 2;
    auto data = generate(cfg);
    CHECK(data.graph.node_count() == 80);
    CHECK(data.truth.covering.community_count() == 4);
    CHECK(data.truth.covering.singleton_count() == 0);
    for (const auto& e : data.log.events) {
        CHECK(e.ts >= cfg.start_ts);
        CHECK(e.ts < cfg.start_ts + static_cast<std::int64_t>(cfg.bins) * cfg.bin_width);
        CHECK(e.target.has_value() == (e.kind != EventKind::Post));
    }
    for (const auto& [v, u] : data.truth.influence_edges) {
        CHECK(data.graph.edge_index(*data.graph.find(v), *data.graph.find(u)).has_value());
    }
}

TEST_CASE("same seed gives byte-identical files")
{
    SynthConfig cfg;
    cfg.nodes = 60;
    cfg.communities = 3;
    cfg.bins = 400;
    cfg.seed = 12;
    testing::ScratchDir a("synth_a"), b("synth_b");
    write_synth(generate(cfg), cfg, a.path());
    write_synth(generate(cfg), cfg, b.path());
    for (auto f : {"events.jsonl", "follows.csv", "truth.txt", "influence.csv", "config.json"}) {
        CHECK(slurp(a / f) == slurp(b / f));
    }
    cfg.seed = 13;
    write_synth(generate(cfg), cfg, b.path());
    CHECK(slurp(a / "events.jsonl") != slurp(b / "events.jsonl"));
}

TEST_CASE("planted influence is visible to transfer entropy")
{
    SynthConfig cfg;
    cfg.seed = 7;
    auto split = te_by_influence(generate(cfg), cfg);
    REQUIRE(split.influence.size() > 10);
    REQUIRE(split.other.size() > 10);
    const double gap = mean(split.influence) - mean(split.other);
    MESSAGE("influence mean " << mean(split.influence) << ", other mean " << mean(split.other) << ", other sd "
                              << stdev(split.other));
    CHECK(gap >= 5.0 * stdev(split.other));
}

TEST_CASE("no coupling means no excess transfer entropy")
{
    SynthConfig cfg;
    cfg.seed = 7;
    cfg.epsilon = 0.0;
    auto split = te_by_influence(generate(cfg), cfg);
    const double se = std::sqrt(std::pow(stdev(split.influence), 2) / static_cast<double>(split.influence.size()) +
                                std::pow(stdev(split.other), 2) / static_cast<double>(split.other.size()));
    CHECK(std::abs(mean(split.influence) - mean(split.other)) < 4.0 * se);
}

TEST_CASE("recovery improves with the in/out follow ratio")
{
    double previous = -1.0;
    for (double p_out : {0.15, 0.06, 0.01}) {
        SynthConfig cfg;
        cfg.bins = 200;
        cfg.p_out = p_out;
        cfg.seed = 4;
        auto data = generate(cfg);
        const double score = nmi(detect_overlapping(weight_structural(data.graph)), data.truth.covering);
        MESSAGE("p_out " << p_out << " -> NMI " << score);
        CHECK(score > previous);
        previous = score;
    }
}
