#pragma once

#include "qocd/graph.hpp"
#include "qocd/ingest.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

namespace qocd {

/// Closed interval [origin, end] of epoch seconds covered by the bins.
struct TimeWindow {
    std::int64_t origin = 0;
    std::int64_t end = 0;
};

struct ActivityOptions {
    std::int64_t bin_width = 600;
    bool retweets_count_as_activity = true;
};

/// Binary per-bin activity indicator for one user.
struct ActivitySeries {
    UserId user;
    std::vector<std::uint8_t> bins;
    std::int64_t bin_width = 600;
    std::int64_t origin = 0;
};

/// ceil((end - origin + 1) / bin_width)
std::size_t bin_count(const TimeWindow& window, std::int64_t bin_width);

/// Window spanning the log: origin is the earliest timestamp rounded down to a
/// multiple of bin_width, end is the latest timestamp. Empty log -> [0, 0].
TimeWindow default_window(const EventLog& log, std::int64_t bin_width);

bool marks_activity(const Event& e, const ActivityOptions& options);

ActivitySeries coarsen(const EventLog& log, const UserId& user, const ActivityOptions& options,
                       const TimeWindow& window);

/// One series per graph node, all sharing origin, width and length.
std::map<UserId, ActivitySeries> batch_coarsen(const EventLog& log, const StructuralGraph& graph,
                                               const ActivityOptions& options, const TimeWindow& window);

/// Debug dump: "user,bin0,bin1,..." plus a JSON sidecar with width and origin.
void write_activity_csv(const std::map<UserId, ActivitySeries>& series, const std::filesystem::path& path);

} // namespace qocd
