#pragma once

#include "qocd/activity.hpp"
#include "qocd/graph.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace qocd {

/// Plug-in entropy in bits with its Miller-Madow adjustment
/// miller_madow = plugin + (observed_alphabet - 1) / (2 * samples).
struct EntropyEstimate {
    double plugin = 0.0;
    double miller_madow = 0.0;
    std::size_t observed_alphabet = 0;
    std::size_t samples = 0;
};

/// Throws std::invalid_argument("no samples") on an empty sequence.
EntropyEstimate plugin_entropy(std::span<const std::uint64_t> symbols);

/// Same estimate from symbol counts (zero counts are unobserved symbols).
EntropyEstimate entropy_from_counts(std::span<const std::uint64_t> counts);

/// Largest supported lag; a joint window packs 2k+1 bits into 64.
inline constexpr int kMaxLag = 31;

/// One pooled observation at time t. Bit j of a past word holds the value at
/// t-k+j, so bit k-1 is the most recent step.
struct WindowSample {
    std::uint8_t future = 0;
    std::uint64_t x_past = 0;
    std::uint64_t y_past = 0;

    friend bool operator==(const WindowSample&, const WindowSample&) = default;
};

/// The T-k samples t = k..T-1 (0-based). Throws std::invalid_argument on a
/// length mismatch, k < 1, k > kMaxLag or k >= T.
std::vector<WindowSample> te_samples(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, int k);

struct TransferEntropy {
    double value = 0.0;  // max(raw, 0)
    double raw = 0.0;    // four-term Miller-Madow sum before truncation
    std::size_t samples = 0;
};

/// Lag-k transfer entropy from source y to target x in bits:
/// H~[X_t,Xp] - H~[Xp] - H~[X_t,Xp,Yp] + H~[Xp,Yp], every term Miller-Madow
/// adjusted with its own observed alphabet and the common sample count.
TransferEntropy transfer_entropy(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, int k);
TransferEntropy transfer_entropy(const ActivitySeries& x, const ActivitySeries& y, int k);

/// TE weights for every structural edge u -> f, with x = series(f) and
/// y = series(u). Entries align with graph.edges().
struct TeTable {
    int lag = 1;
    std::vector<double> weight;
    std::vector<double> raw;
};

/// Throws DataError naming the first node without a series.
TeTable pairwise_te(const StructuralGraph& graph, const std::map<UserId, ActivitySeries>& series, int k,
                    unsigned threads = 1);

} // namespace qocd
