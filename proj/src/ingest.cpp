#include "qocd/ingest.hpp"

#include "qocd/error.hpp"
#include "file_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

namespace qocd {

using detail::open_input;
using detail::open_output;

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s)
{
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

bool has_space(std::string_view s)
{
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::optional<std::string> normalize_hashtag(std::string_view raw)
{
    if (!raw.empty() && raw.front() == '#') raw.remove_prefix(1);
    if (raw.empty() || has_space(raw) || raw.front() == '#') return std::nullopt;
    std::string tag(raw);
    std::transform(tag.begin(), tag.end(), tag.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return tag;
}

std::optional<Event> parse_event_line(std::string_view line)
{
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (!j.is_object()) return std::nullopt;

    Event e;
    auto kind = j.find("kind");
    auto actor = j.find("actor");
    auto ts = j.find("ts");
    if (kind == j.end() || !kind->is_string()) return std::nullopt;
    if (actor == j.end() || !actor->is_string()) return std::nullopt;
    if (ts == j.end() || !ts->is_number_integer()) return std::nullopt;

    auto k = parse_event_kind(kind->get<std::string>());
    if (!k) return std::nullopt;
    e.kind = *k;
    e.actor = actor->get<std::string>();
    if (e.actor.empty() || has_space(e.actor)) return std::nullopt;
    if (ts->is_number_unsigned()) {
        auto v = ts->get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) return std::nullopt;
        e.ts = static_cast<std::int64_t>(v);
    } else {
        e.ts = ts->get<std::int64_t>();
    }
    if (e.ts < 0) return std::nullopt;

    auto target = j.find("target");
    if (target != j.end() && !target->is_null()) {
        if (!target->is_string()) return std::nullopt;
        auto t = target->get<std::string>();
        if (t.empty() || has_space(t)) return std::nullopt;
        e.target = std::move(t);
    }
    if (e.kind == EventKind::Post && e.target) return std::nullopt;
    if (e.kind != EventKind::Post && !e.target) return std::nullopt;

    auto tags = j.find("hashtags");
    if (tags != j.end() && !tags->is_null()) {
        if (!tags->is_array()) return std::nullopt;
        for (const auto& t : *tags) {
            if (!t.is_string()) return std::nullopt;
            auto tag = normalize_hashtag(t.get<std::string>());
            if (!tag) return std::nullopt;
            if (e.kind == EventKind::Post) e.hashtags.push_back(std::move(*tag));
        }
    }
    return e;
}

} // namespace

std::string_view to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::Post: return "post";
    case EventKind::Mention: return "mention";
    case EventKind::Retweet: return "retweet";
    }
    return "post";
}

std::optional<EventKind> parse_event_kind(std::string_view text)
{
    if (text == "post") return EventKind::Post;
    if (text == "mention") return EventKind::Mention;
    if (text == "retweet") return EventKind::Retweet;
    return std::nullopt;
}

EventLog parse_events(std::istream& in)
{
    EventLog log;
    std::string line;
    while (std::getline(in, line)) {
        auto body = trim(line);
        if (body.empty()) continue;
        if (auto e = parse_event_line(body)) {
            log.events.push_back(std::move(*e));
        } else {
            ++log.skipped_lines;
        }
    }
    if (in.bad()) throw DataError("error while reading event stream");
    return log;
}

EventLog read_events(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return parse_events(in);
}

std::string format_event(const Event& e)
{
    nlohmann::ordered_json j;
    j["kind"] = to_string(e.kind);
    j["actor"] = e.actor;
    j["ts"] = e.ts;
    if (e.target) j["target"] = *e.target;
    if (!e.hashtags.empty()) j["hashtags"] = e.hashtags;
    return j.dump();
}

FollowEdges parse_follows(std::istream& in)
{
    FollowEdges out;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        auto body = trim(line);
        if (body.empty()) continue;
        if (!header_seen) {
            if (body != "followee,follower") {
                throw DataError("follow CSV must start with header 'followee,follower'");
            }
            header_seen = true;
            continue;
        }
        auto comma = body.find(',');
        if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) {
            ++out.skipped_lines;
            continue;
        }
        auto followee = trim(body.substr(0, comma));
        auto follower = trim(body.substr(comma + 1));
        if (followee.empty() || follower.empty() || followee == follower) {
            ++out.skipped_lines;
            continue;
        }
        out.edges.emplace_back(std::string(followee), std::string(follower));
    }
    if (in.bad()) throw DataError("error while reading follow edges");
    return out;
}

StructuralGraph read_follow_graph(const std::filesystem::path& path, std::size_t* skipped)
{
    auto in = open_input(path);
    auto follows = parse_follows(in);
    if (skipped) *skipped = follows.skipped_lines;
    return StructuralGraph::from_edges(follows.edges);
}

void write_follow_graph(const StructuralGraph& g, const std::filesystem::path& path)
{
    auto out = open_output(path);
    out << "followee,follower\n";
    for (const Edge& e : g.edges()) {
        out << g.id(e.source) << ',' << g.id(e.target) << '\n';
    }
    detail::check_written(out, path);
}

InfoEventCounts count_information_events(const EventLog& log, const StructuralGraph& graph)
{
    InfoEventCounts counts;
    for (const auto& id : graph.nodes()) counts.emplace(id, InfoTally{});

    for (const Event& e : log.events) {
        if (e.kind == EventKind::Post || !e.target || *e.target == e.actor) continue;
        auto actor = counts.find(e.actor);
        auto target = counts.find(*e.target);
        if (actor == counts.end() || target == counts.end()) continue;
        if (e.kind == EventKind::Mention) {
            // actor sent information to target
            ++actor->second.outgoing;
            ++target->second.incoming;
        } else {
            // actor rebroadcast target's status
            ++target->second.outgoing;
            ++actor->second.incoming;
        }
    }
    return counts;
}

FilterResult filter_active(const StructuralGraph& graph, const InfoEventCounts& counts,
                           std::uint64_t threshold)
{
    FilterResult result;
    result.report.threshold = threshold;
    std::vector<bool> keep(graph.node_count(), false);
    for (NodeIndex i = 0; i < graph.node_count(); ++i) {
        auto it = counts.find(graph.id(i));
        const InfoTally tally = it == counts.end() ? InfoTally{} : it->second;
        keep[i] = tally.outgoing >= threshold && tally.incoming >= threshold;
        (keep[i] ? result.report.kept : result.report.removed_inactive).push_back(graph.id(i));
    }
    result.graph = graph.induced(keep);
    return result;
}

FilterResult giant_scc(const StructuralGraph& graph)
{
    if (graph.empty()) throw DataError("empty graph");

    // Iterative Tarjan.
    const std::size_t n = graph.node_count();
    constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeIndex> stack;
    std::vector<std::pair<NodeIndex, std::size_t>> call;  // node, next out-edge offset
    std::size_t counter = 0, n_comp = 0;

    for (NodeIndex root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            auto& [v, pos] = call.back();
            auto out = graph.out_edges(v);
            if (pos < out.size()) {
                NodeIndex w = out[pos++].target;
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                NodeIndex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = n_comp;
                } while (w != v);
                ++n_comp;
            }
            NodeIndex finished = v;
            call.pop_back();
            if (!call.empty()) {
                NodeIndex parent = call.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }

    // Nodes are visited in index order, so the first node of each component
    // seen in a forward scan is its lexicographically smallest member.
    std::vector<std::size_t> size(n_comp, 0), first(n_comp, unvisited);
    for (NodeIndex i = 0; i < n; ++i) {
        ++size[comp[i]];
        if (first[comp[i]] == unvisited) first[comp[i]] = i;
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < n_comp; ++c) {
        if (size[c] > size[best] || (size[c] == size[best] && first[c] < first[best])) best = c;
    }

    FilterResult result;
    std::vector<bool> keep(n, false);
    for (NodeIndex i = 0; i < n; ++i) {
        keep[i] = comp[i] == best;
        (keep[i] ? result.report.kept : result.report.removed_not_in_gscc).push_back(graph.id(i));
    }
    result.graph = graph.induced(keep);
    return result;
}

FilterResult ingest_network(const EventLog& log, const StructuralGraph& graph, std::uint64_t threshold)
{
    auto counts = count_information_events(log, graph);
    auto active = filter_active(graph, counts, threshold);
    if (active.graph.empty()) throw DataError("no users pass the activity threshold");
    auto scc = giant_scc(active.graph);
    scc.report.removed_inactive = std::move(active.report.removed_inactive);
    scc.report.threshold = threshold;
    return scc;
}

void write_filter_report(const FilterReport& report, const std::filesystem::path& path)
{
    nlohmann::ordered_json j;
    j["threshold"] = report.threshold;
    j["rule"] = report.rule;
    j["kept"] = report.kept;
    j["removed_inactive"] = report.removed_inactive;
    j["removed_not_in_gscc"] = report.removed_not_in_gscc;
    auto out = open_output(path);
    out << j.dump(2) << '\n';
    detail::check_written(out, path);
}

} // namespace qocd
