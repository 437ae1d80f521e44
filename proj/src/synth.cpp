#include "qocd/synth.hpp"

#include "file_util.hpp"
#include "qocd/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace qocd {

namespace {

template <typename Cfg, typename Fn>
void for_each_field(Cfg& c, Fn&& fn)
{
    fn("nodes", c.nodes);
    fn("communities", c.communities);
    fn("overlap_fraction", c.overlap_fraction);
    fn("p_in", c.p_in);
    fn("p_out", c.p_out);
    fn("leaders_per_community", c.leaders_per_community);
    fn("leader_follow_prob", c.leader_follow_prob);
    fn("influence_prob", c.influence_prob);
    fn("epsilon", c.epsilon);
    fn("base_rate", c.base_rate);
    fn("bins", c.bins);
    fn("bin_width", c.bin_width);
    fn("start_ts", c.start_ts);
    fn("influence_lag", c.influence_lag);
    fn("tags_per_community", c.tags_per_community);
    fn("shared_tags", c.shared_tags);
    fn("hashtag_rate", c.hashtag_rate);
    fn("community_tag_prob", c.community_tag_prob);
    fn("mention_rate", c.mention_rate);
    fn("retweet_rate", c.retweet_rate);
    fn("interaction_intra_bias", c.interaction_intra_bias);
    fn("cross_influencers", c.cross_influencers);
    fn("cross_communities", c.cross_communities);
    fn("cross_follow_prob", c.cross_follow_prob);
    fn("seed", c.seed);
}

// Uniform doubles and indices straight from the engine bits, so streams are
// identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return uniform() < p; }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
    }

private:
    std::mt19937_64 engine_;
};

void check_probability(double p, const char* name)
{
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

std::string node_name(std::size_t i, std::size_t total)
{
    std::string digits = std::to_string(i);
    const std::size_t width = std::max<std::size_t>(3, std::to_string(total - 1).size());
    return "u" + std::string(width - digits.size(), '0') + digits;
}

bool share_community(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    return std::any_of(a.begin(), a.end(), [&](std::size_t c) { return std::find(b.begin(), b.end(), c) != b.end(); });
}

} // namespace

nlohmann::ordered_json to_json(const SynthConfig& cfg)
{
    nlohmann::ordered_json j;
    for_each_field(cfg, [&](const char* name, const auto& value) { j[name] = value; });
    return j;
}

SynthConfig synth_config_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw DataError("synth config must be a JSON object");
    SynthConfig cfg;
    std::set<std::string> known;
    for_each_field(cfg, [&](const char* name, auto& value) {
        known.insert(name);
        if (auto it = j.find(name); it != j.end()) {
            try {
                value = it->get<std::remove_reference_t<decltype(value)>>();
            } catch (const nlohmann::json::exception&) {
                throw DataError(std::string("bad value for synth config key '") + name + "'");
            }
        }
    });
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw DataError("unknown synth config key '" + key + "'");
    }
    return cfg;
}

void validate(const SynthConfig& cfg)
{
    if (cfg.communities == 0) throw std::invalid_argument("need at least one community");
    if (cfg.communities * 2 > cfg.nodes) throw std::invalid_argument("community sizes exceed the node count");
    check_probability(cfg.overlap_fraction, "overlap_fraction");
    check_probability(cfg.p_in, "p_in");
    check_probability(cfg.p_out, "p_out");
    check_probability(cfg.leader_follow_prob, "leader_follow_prob");
    check_probability(cfg.influence_prob, "influence_prob");
    check_probability(cfg.base_rate, "base_rate");
    check_probability(cfg.hashtag_rate, "hashtag_rate");
    check_probability(cfg.community_tag_prob, "community_tag_prob");
    check_probability(cfg.mention_rate, "mention_rate");
    check_probability(cfg.retweet_rate, "retweet_rate");
    check_probability(cfg.interaction_intra_bias, "interaction_intra_bias");
    check_probability(cfg.cross_follow_prob, "cross_follow_prob");
    if (!(cfg.p_in > cfg.p_out)) throw std::invalid_argument("p_in must exceed p_out");
    if (!(cfg.epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
    if (cfg.base_rate + cfg.epsilon > 1.0) throw std::invalid_argument("base_rate + epsilon must not exceed 1");
    if (cfg.bins < 2) throw std::invalid_argument("need at least two bins");
    if (cfg.bin_width < 1) throw std::invalid_argument("bin width must be >= 1");
    if (cfg.start_ts < 0) throw std::invalid_argument("start timestamp must be non-negative");
    if (cfg.influence_lag < 1) throw std::invalid_argument("influence lag must be >= 1");
    if (cfg.communities * cfg.leaders_per_community + cfg.cross_influencers > cfg.nodes) {
        throw std::invalid_argument("more leaders and cross influencers than nodes");
    }
    const auto overlapping = static_cast<std::size_t>(std::llround(cfg.overlap_fraction * static_cast<double>(cfg.nodes)));
    if (overlapping + cfg.communities * cfg.leaders_per_community + cfg.cross_influencers > cfg.nodes) {
        throw std::invalid_argument("overlap fraction leaves too few plain members for leaders and influencers");
    }
    if (cfg.cross_influencers > 0 && cfg.cross_communities + 1 > cfg.communities) {
        throw std::invalid_argument("cross influencers need that many foreign communities");
    }
    if (cfg.hashtag_rate > 0.0 && cfg.tags_per_community == 0 && cfg.shared_tags == 0) {
        throw std::invalid_argument("hashtags requested but no tag pools");
    }
}

SynthData generate(const SynthConfig& cfg)
{
    validate(cfg);
    Rng rng(cfg.seed);
    const std::size_t n = cfg.nodes;

    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) names[i] = node_name(i, n);

    // Home communities: a shuffled round-robin gives near-equal sizes.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<std::vector<std::size_t>> member_of(n);
    for (std::size_t r = 0; r < n; ++r) member_of[order[r]].push_back(r % cfg.communities);
    const auto overlapping = static_cast<std::size_t>(std::llround(cfg.overlap_fraction * static_cast<double>(n)));
    if (cfg.communities > 1) {
        for (std::size_t r = 0; r < overlapping; ++r) {
            const std::size_t u = order[n - 1 - r];
            std::size_t extra = rng.index(cfg.communities - 1);
            if (extra >= member_of[u][0]) ++extra;
            member_of[u].push_back(extra);
            std::sort(member_of[u].begin(), member_of[u].end());
        }
    }

    // The first positions of the shuffled order are community leaders, the
    // next ones cross-community influencers; overlap is taken from the end.
    const std::size_t n_leaders = cfg.communities * cfg.leaders_per_community;
    std::vector<bool> is_leader(n, false);
    for (std::size_t r = 0; r < n_leaders; ++r) is_leader[order[r]] = true;
    auto leads = [&](std::size_t v, std::size_t u) {
        return is_leader[v] && std::find(member_of[u].begin(), member_of[u].end(), member_of[v][0]) != member_of[u].end();
    };

    // Follow edges and intra-community influence.
    std::vector<std::pair<UserId, UserId>> follows;
    std::vector<std::vector<std::size_t>> influencers(n);  // who drives u
    std::vector<std::vector<std::size_t>> followers(n), followees(n);
    std::vector<std::vector<std::size_t>> intra_followers(n), intra_followees(n);
    auto add_follow = [&](std::size_t v, std::size_t u) {
        follows.emplace_back(names[v], names[u]);
        followers[v].push_back(u);
        followees[u].push_back(v);
        if (share_community(member_of[v], member_of[u])) {
            intra_followers[v].push_back(u);
            intra_followees[u].push_back(v);
        }
    };
    std::vector<std::vector<bool>> follows_matrix(n, std::vector<bool>(n, false));
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u) {
            if (u == v) continue;
            if (leads(v, u)) {
                if (!rng.chance(cfg.leader_follow_prob)) continue;
                follows_matrix[v][u] = true;
                add_follow(v, u);
                influencers[u].push_back(v);
                continue;
            }
            const bool together = share_community(member_of[v], member_of[u]);
            if (!rng.chance(together ? cfg.p_in : cfg.p_out)) continue;
            follows_matrix[v][u] = true;
            add_follow(v, u);
            if (together && rng.chance(cfg.influence_prob)) influencers[u].push_back(v);
        }
    }

    for (std::size_t r = n_leaders; r < n_leaders + cfg.cross_influencers; ++r) {
        const std::size_t x = order[r];
        std::vector<std::size_t> foreign;
        for (std::size_t c = 0; c < cfg.communities; ++c) {
            if (std::find(member_of[x].begin(), member_of[x].end(), c) == member_of[x].end()) foreign.push_back(c);
        }
        rng.shuffle(foreign);
        foreign.resize(std::min(foreign.size(), cfg.cross_communities));
        for (std::size_t u = 0; u < n; ++u) {
            if (u == x || !share_community(member_of[u], foreign)) continue;
            if (!rng.chance(cfg.cross_follow_prob)) continue;
            if (!follows_matrix[x][u]) {
                follows_matrix[x][u] = true;
                add_follow(x, u);
            }
            if (std::find(influencers[u].begin(), influencers[u].end(), x) == influencers[u].end()) {
                influencers[u].push_back(x);
            }
        }
    }

    // Activity: per-bin Bernoulli, boosted after an influencer's post.
    const auto lag = static_cast<std::size_t>(cfg.influence_lag);
    std::vector<std::vector<std::uint8_t>> posted(n, std::vector<std::uint8_t>(cfg.bins, 0));
    for (std::size_t t = 0; t < cfg.bins; ++t) {
        for (std::size_t u = 0; u < n; ++u) {
            bool driven = false;
            if (t >= lag) {
                driven = std::any_of(influencers[u].begin(), influencers[u].end(),
                                     [&](std::size_t v) { return posted[v][t - lag] != 0; });
            }
            posted[u][t] = rng.chance(driven ? cfg.base_rate + cfg.epsilon : cfg.base_rate) ? 1 : 0;
        }
    }

    auto tag_name = [&](std::size_t pool, std::size_t i) {
        return pool == cfg.communities ? "shared" + std::to_string(i)
                                       : "c" + std::to_string(pool) + "t" + std::to_string(i);
    };
    auto pick_target = [&](std::size_t actor, const std::vector<std::size_t>& intra) {
        if (!intra.empty() && rng.chance(cfg.interaction_intra_bias)) return intra[rng.index(intra.size())];
        std::size_t other = rng.index(n - 1);
        return other >= actor ? other + 1 : other;
    };

    SynthData data;
    for (std::size_t t = 0; t < cfg.bins; ++t) {
        for (std::size_t u = 0; u < n; ++u) {
            if (!posted[u][t]) continue;
            const std::int64_t ts = cfg.start_ts + static_cast<std::int64_t>(t) * cfg.bin_width +
                                    static_cast<std::int64_t>(rng.index(static_cast<std::size_t>(cfg.bin_width)));
            Event post{EventKind::Post, names[u], ts, std::nullopt, {}};
            if (rng.chance(cfg.hashtag_rate)) {
                const bool home = cfg.shared_tags == 0 ||
                                  (cfg.tags_per_community > 0 && rng.chance(cfg.community_tag_prob));
                if (home) {
                    const std::size_t c = member_of[u][rng.index(member_of[u].size())];
                    post.hashtags.push_back(tag_name(c, rng.index(cfg.tags_per_community)));
                } else {
                    post.hashtags.push_back(tag_name(cfg.communities, rng.index(cfg.shared_tags)));
                }
            }
            data.log.events.push_back(std::move(post));
            if (rng.chance(cfg.mention_rate)) {
                const std::size_t f = pick_target(u, intra_followers[u]);
                data.log.events.push_back({EventKind::Mention, names[u], ts, names[f], {}});
            }
            if (rng.chance(cfg.retweet_rate)) {
                const std::size_t v = pick_target(u, intra_followees[u]);
                data.log.events.push_back({EventKind::Retweet, names[u], ts, names[v], {}});
            }
        }
    }

    data.graph = StructuralGraph(names, follows);

    std::vector<std::vector<UserId>> planted(cfg.communities);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t c : member_of[u]) planted[c].push_back(names[u]);
    }
    data.truth.covering = Covering(names, planted);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v : influencers[u]) data.truth.influence_edges.emplace_back(names[v], names[u]);
    }
    std::sort(data.truth.influence_edges.begin(), data.truth.influence_edges.end());
    return data;
}

void write_synth(const SynthData& data, const SynthConfig& cfg, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);

    const auto events_path = dir / "events.jsonl";
    auto events = detail::open_output(events_path);
    for (const Event& e : data.log.events) events << format_event(e) << '\n';
    detail::check_written(events, events_path);

    write_follow_graph(data.graph, dir / "follows.csv");
    export_covering(dir / "truth.txt", data.truth.covering);

    const auto influence_path = dir / "influence.csv";
    auto influence = detail::open_output(influence_path);
    influence << "influencer,influenced\n";
    for (const auto& [v, u] : data.truth.influence_edges) influence << v << ',' << u << '\n';
    detail::check_written(influence, influence_path);

    const auto config_path = dir / "config.json";
    auto config = detail::open_output(config_path);
    config << to_json(cfg).dump(2) << '\n';
    detail::check_written(config, config_path);
}

} // namespace qocd
