#pragma once

#include "qocd/graph.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qocd {

enum class EventKind { Post, Mention, Retweet };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

/// One status emission. Mentions carry the mentioned user as target,
/// retweets carry the original author. Hashtags are only kept on posts.
struct Event {
    EventKind kind = EventKind::Post;
    UserId actor;
    std::int64_t ts = 0;
    std::optional<UserId> target;
    std::vector<std::string> hashtags;

    friend bool operator==(const Event&, const Event&) = default;
};

struct EventLog {
    std::vector<Event> events;
    std::size_t skipped_lines = 0;
};

/// Reads JSON-lines events. Malformed records are skipped and counted;
/// blank lines are ignored.
EventLog parse_events(std::istream& in);
EventLog read_events(const std::filesystem::path& path);

/// Serializes one event in the same JSON-lines format parse_events reads.
std::string format_event(const Event& e);

struct FollowEdges {
    std::vector<std::pair<UserId, UserId>> edges;  // (followee, follower)
    std::size_t skipped_lines = 0;
};

/// Reads a "followee,follower" CSV. Self-follows and malformed rows are skipped.
FollowEdges parse_follows(std::istream& in);
StructuralGraph read_follow_graph(const std::filesystem::path& path, std::size_t* skipped = nullptr);
void write_follow_graph(const StructuralGraph& g, const std::filesystem::path& path);

struct InfoTally {
    std::uint64_t outgoing = 0;
    std::uint64_t incoming = 0;

    friend bool operator==(const InfoTally&, const InfoTally&) = default;
};

/// Per-user information-event counts, one entry for every graph node.
using InfoEventCounts = std::map<UserId, InfoTally>;

/// Outgoing for u: in-network users u mentions, plus retweets of u by
/// in-network users. Incoming for u: mentions of u, plus retweets u makes
/// of in-network users. Events with an out-of-network party, or with the
/// actor as its own target, are not counted.
InfoEventCounts count_information_events(const EventLog& log, const StructuralGraph& graph);

struct FilterReport {
    std::vector<UserId> kept;
    std::vector<UserId> removed_inactive;
    std::vector<UserId> removed_not_in_gscc;
    std::uint64_t threshold = 0;
    std::string rule = "per-type: outgoing >= threshold AND incoming >= threshold";
};

struct FilterResult {
    StructuralGraph graph;
    FilterReport report;
};

/// Keeps users with outgoing >= threshold and incoming >= threshold.
FilterResult filter_active(const StructuralGraph& graph, const InfoEventCounts& counts,
                           std::uint64_t threshold = 9);

/// Largest strongly connected component; ties go to the component holding
/// the lexicographically smallest id. Throws DataError on an empty graph.
FilterResult giant_scc(const StructuralGraph& graph);

/// Count -> filter -> giant SCC, single pass. The report combines both stages.
FilterResult ingest_network(const EventLog& log, const StructuralGraph& graph,
                            std::uint64_t threshold = 9);

void write_filter_report(const FilterReport& report, const std::filesystem::path& path);

} // namespace qocd
