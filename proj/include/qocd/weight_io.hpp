#pragma once

#include "qocd/weighting.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace qocd {

/// Weight printed with 12 significant digits ("%.12g").
std::string format_weight(double w);

/// CSV "source,target,weight", one row per edge in graph edge order.
void write_weight_table(std::ostream& out, const WeightedDigraph& wg);
void write_weight_table(const std::filesystem::path& path, const WeightedDigraph& wg);

/// Table plus "<path>.json" sidecar holding `metadata` and the scheme label.
void write_weighting(const std::filesystem::path& path, const WeightedDigraph& wg,
                     nlohmann::ordered_json metadata = nlohmann::ordered_json::object());

/// Reads a weight table. The graph is rebuilt from the listed edges, so
/// zero-weight rows must be present to preserve the edge set. Throws
/// DataError on malformed rows, negative weights or duplicate edges.
WeightedDigraph read_weight_table(std::istream& in, std::string scheme);
WeightedDigraph read_weight_table(const std::filesystem::path& path);

} // namespace qocd
