#include "qocd/activity.hpp"

#include "file_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qocd {

namespace {

void check_args(const ActivityOptions& options, const TimeWindow& window)
{
    if (options.bin_width < 1) throw std::invalid_argument("bin width must be >= 1");
    if (window.origin > window.end) throw std::invalid_argument("window origin is after its end");
}

void mark(std::vector<std::uint8_t>& bins, const TimeWindow& window, std::int64_t width, std::int64_t ts)
{
    if (ts < window.origin || ts > window.end) return;
    bins[static_cast<std::size_t>((ts - window.origin) / width)] = 1;
}

} // namespace

std::size_t bin_count(const TimeWindow& window, std::int64_t bin_width)
{
    const std::int64_t span = window.end - window.origin + 1;
    return static_cast<std::size_t>((span + bin_width - 1) / bin_width);
}

TimeWindow default_window(const EventLog& log, std::int64_t bin_width)
{
    if (bin_width < 1) throw std::invalid_argument("bin width must be >= 1");
    if (log.events.empty()) return {};
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = 0;
    for (const Event& e : log.events) {
        lo = std::min(lo, e.ts);
        hi = std::max(hi, e.ts);
    }
    return {lo / bin_width * bin_width, hi};
}

bool marks_activity(const Event& e, const ActivityOptions& options)
{
    return e.kind == EventKind::Post || (e.kind == EventKind::Retweet && options.retweets_count_as_activity);
}

ActivitySeries coarsen(const EventLog& log, const UserId& user, const ActivityOptions& options,
                       const TimeWindow& window)
{
    check_args(options, window);
    ActivitySeries s{user, std::vector<std::uint8_t>(bin_count(window, options.bin_width), 0),
                     options.bin_width, window.origin};
    for (const Event& e : log.events) {
        if (e.actor == user && marks_activity(e, options)) mark(s.bins, window, options.bin_width, e.ts);
    }
    return s;
}

std::map<UserId, ActivitySeries> batch_coarsen(const EventLog& log, const StructuralGraph& graph,
                                               const ActivityOptions& options, const TimeWindow& window)
{
    check_args(options, window);
    const std::size_t length = bin_count(window, options.bin_width);
    std::vector<std::vector<std::uint8_t>> bins(graph.node_count(), std::vector<std::uint8_t>(length, 0));
    for (const Event& e : log.events) {
        if (!marks_activity(e, options)) continue;
        if (auto i = graph.find(e.actor)) mark(bins[*i], window, options.bin_width, e.ts);
    }
    std::map<UserId, ActivitySeries> out;
    for (NodeIndex i = 0; i < graph.node_count(); ++i) {
        out.emplace_hint(out.end(), graph.id(i),
                         ActivitySeries{graph.id(i), std::move(bins[i]), options.bin_width, window.origin});
    }
    return out;
}

void write_activity_csv(const std::map<UserId, ActivitySeries>& series, const std::filesystem::path& path)
{
    auto out = detail::open_output(path);
    nlohmann::ordered_json meta;
    for (const auto& [user, s] : series) {
        out << user;
        for (auto b : s.bins) out << ',' << static_cast<int>(b);
        out << '\n';
        if (meta.empty()) {
            meta["bin_width"] = s.bin_width;
            meta["origin"] = s.origin;
            meta["length"] = s.bins.size();
        }
    }
    detail::check_written(out, path);
    auto sidecar_path = path;
    sidecar_path += ".json";
    auto sidecar = detail::open_output(sidecar_path);
    sidecar << meta.dump(2) << '\n';
    detail::check_written(sidecar, sidecar_path);
}

} // namespace qocd
