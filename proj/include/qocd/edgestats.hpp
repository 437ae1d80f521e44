#pragma once

#include "qocd/communities.hpp"
#include "qocd/weighting.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qocd {

enum class EdgeClass { Inter = 0, Intra = 1, Mixed = 2 };

inline constexpr std::array<EdgeClass, 3> kEdgeClasses = {EdgeClass::Inter, EdgeClass::Intra, EdgeClass::Mixed};

std::string_view to_string(EdgeClass c);

/// Inter if the membership sets are disjoint, Intra if equal, Mixed
/// otherwise. Both spans must be sorted and non-empty.
EdgeClass classify_edge(std::span<const std::size_t> mu, std::span<const std::size_t> mf);

/// One class per edge of wg, using singleton ids for uncovered nodes.
/// Throws DataError if an endpoint is missing from the covering universe.
std::vector<EdgeClass> partition_edges(const WeightedDigraph& wg, const Covering& c);

struct Histogram {
    std::vector<double> edges;            // bins + 1 boundaries
    std::vector<std::uint64_t> counts;    // one per bin
};

/// (w, fraction of weights strictly greater than w) for each distinct w.
struct CcdfPoint {
    double value;
    double fraction_above;
};

struct ClassWeights {
    EdgeClass edge_class = EdgeClass::Inter;
    std::size_t count = 0;
    std::optional<double> median;  // lower middle for even counts
    std::optional<double> min;
    std::optional<double> max;
    Histogram histogram;
    std::vector<CcdfPoint> ccdf;
};

struct ConditionalWeightReport {
    std::string covering;
    std::string scheme;
    std::size_t edge_count = 0;
    std::array<ClassWeights, 3> classes;  // indexed by EdgeClass

    const ClassWeights& of(EdgeClass c) const { return classes[static_cast<std::size_t>(c)]; }
};

/// Lower median; nullopt for an empty sample.
std::optional<double> lower_median(std::vector<double> values);

std::vector<CcdfPoint> empirical_ccdf(std::vector<double> values);

/// Histograms share `bins` equal-width bins over the observed range of all
/// weights (a degenerate range is widened to [w, w + 1]).
ConditionalWeightReport conditional_weights(const WeightedDigraph& wg, std::span<const EdgeClass> classes,
                                            std::size_t bins = 50);

/// (s, proportion of non-singleton communities larger than s) for each
/// observed size s, ascending.
std::vector<std::pair<std::size_t, double>> size_ccdf(const Covering& c);

/// <prefix>.csv (class,statistic,value rows), <prefix>.json summary and
/// <prefix>_ccdf_<class>.csv two-column CCDFs.
void write_edge_report(const ConditionalWeightReport& report, const std::filesystem::path& prefix);

void write_size_ccdf(const std::vector<std::pair<std::size_t, double>>& ccdf, const std::filesystem::path& path);

} // namespace qocd
