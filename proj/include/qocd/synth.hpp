#pragma once

#include "qocd/communities.hpp"
#include "qocd/graph.hpp"
#include "qocd/ingest.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace qocd {

struct SynthConfig {
    std::size_t nodes = 200;
    std::size_t communities = 8;
    double overlap_fraction = 0.1;  // share of nodes given a second community
    double p_in = 0.3;              // follow probability for co-members
    double p_out = 0.02;            // follow probability otherwise
    std::size_t leaders_per_community = 3;  // planted influencers inside each community
    double leader_follow_prob = 0.9;        // a member follows each of its leaders
    double influence_prob = 0.0;    // share of other co-member follow edges that carry influence
    double epsilon = 0.4;           // post probability boost after an influencer posts
    double base_rate = 0.05;        // per-bin post probability
    std::size_t bins = 9072;
    std::int64_t bin_width = 600;
    std::int64_t start_ts = 1303689600;  // 2011-04-25T00:00:00Z
    int influence_lag = 1;
    std::size_t tags_per_community = 10;
    std::size_t shared_tags = 20;
    double hashtag_rate = 0.3;         // probability a post carries a hashtag
    double community_tag_prob = 0.8;   // probability that hashtag comes from a home pool
    double mention_rate = 0.05;        // mentions emitted per post
    double retweet_rate = 0.05;        // retweets emitted per post
    double interaction_intra_bias = 0.9;
    std::size_t cross_influencers = 0;      // nodes that also drive other communities
    std::size_t cross_communities = 3;      // foreign communities each one drives
    double cross_follow_prob = 0.5;         // a foreign member follows the influencer
    std::uint64_t seed = 1;
};

nlohmann::ordered_json to_json(const SynthConfig& cfg);
/// Missing keys keep their defaults; unknown keys are a DataError.
SynthConfig synth_config_from_json(const nlohmann::json& j);

struct PlantedTruth {
    Covering covering;
    std::vector<std::pair<UserId, UserId>> influence_edges;  // (influencer, influenced), sorted
};

struct SynthData {
    EventLog log;
    StructuralGraph graph;
    PlantedTruth truth;
};

/// Throws std::invalid_argument on an infeasible configuration.
void validate(const SynthConfig& cfg);

/// Deterministic for a fixed configuration (including seed).
SynthData generate(const SynthConfig& cfg);

/// Writes events.jsonl, follows.csv, truth.txt, influence.csv and config.json.
void write_synth(const SynthData& data, const SynthConfig& cfg, const std::filesystem::path& dir);

} // namespace qocd
