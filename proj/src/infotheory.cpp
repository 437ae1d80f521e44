#include "qocd/infotheory.hpp"

#include "qocd/error.hpp"
#include "qocd/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qocd {

namespace {

// Dense count tables up to 2^20 cells; beyond that, sort the packed keys.
constexpr int kDenseBits = 20;

void check_lag(std::size_t x_len, std::size_t y_len, int k)
{
    if (x_len != y_len) throw std::invalid_argument("series lengths differ");
    if (k < 1 || k > kMaxLag) throw std::invalid_argument("lag must be in [1, " + std::to_string(kMaxLag) + "]");
    if (static_cast<std::size_t>(k) >= x_len) throw std::invalid_argument("lag must be smaller than series length");
}

double mm_entropy(std::span<const std::uint64_t> counts, std::uint64_t n)
{
    // H = log2 n - sum c log2 c / n, summed in table order.
    double acc = 0.0;
    std::uint64_t observed = 0;
    for (auto c : counts) {
        if (c == 0) continue;
        ++observed;
        acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
    }
    const double dn = static_cast<double>(n);
    return std::log2(dn) - acc / dn + static_cast<double>(observed - 1) / (2.0 * dn);
}

// Run-length counts of a sorted key vector.
std::vector<std::uint64_t> run_counts(std::vector<std::uint64_t>& keys)
{
    std::sort(keys.begin(), keys.end());
    std::vector<std::uint64_t> counts;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        counts.push_back(j - i);
        i = j;
    }
    return counts;
}

template <typename Visit>
void for_each_key(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, int k, Visit&& visit)
{
    const auto ku = static_cast<unsigned>(k);
    std::uint64_t xp = 0, yp = 0;
    for (std::size_t j = 0; j < ku; ++j) {
        xp |= static_cast<std::uint64_t>(x[j] & 1u) << j;
        yp |= static_cast<std::uint64_t>(y[j] & 1u) << j;
    }
    for (std::size_t t = ku; t < x.size(); ++t) {
        const std::uint64_t future = x[t] & 1u;
        visit(future | (xp << 1) | (yp << (ku + 1)));
        xp = (xp >> 1) | (static_cast<std::uint64_t>(x[t] & 1u) << (ku - 1));
        yp = (yp >> 1) | (static_cast<std::uint64_t>(y[t] & 1u) << (ku - 1));
    }
}

} // namespace

EntropyEstimate entropy_from_counts(std::span<const std::uint64_t> counts)
{
    EntropyEstimate est;
    double acc = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        ++est.observed_alphabet;
        est.samples += c;
        acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
    }
    if (est.samples == 0) throw std::invalid_argument("no samples");
    const double n = static_cast<double>(est.samples);
    est.plugin = std::max(0.0, std::log2(n) - acc / n);
    est.miller_madow = est.plugin + static_cast<double>(est.observed_alphabet - 1) / (2.0 * n);
    return est;
}

EntropyEstimate plugin_entropy(std::span<const std::uint64_t> symbols)
{
    if (symbols.empty()) throw std::invalid_argument("no samples");
    std::vector<std::uint64_t> keys(symbols.begin(), symbols.end());
    auto counts = run_counts(keys);
    return entropy_from_counts(counts);
}

std::vector<WindowSample> te_samples(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, int k)
{
    check_lag(x.size(), y.size(), k);
    const auto ku = static_cast<unsigned>(k);
    const std::uint64_t past_mask = (std::uint64_t{1} << ku) - 1;
    std::vector<WindowSample> out;
    out.reserve(x.size() - ku);
    for_each_key(x, y, k, [&](std::uint64_t key) {
        out.push_back({static_cast<std::uint8_t>(key & 1u), (key >> 1) & past_mask, key >> (ku + 1)});
    });
    return out;
}

TransferEntropy transfer_entropy(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, int k)
{
    check_lag(x.size(), y.size(), k);
    const auto ku = static_cast<unsigned>(k);
    const std::uint64_t n = x.size() - ku;
    const std::uint64_t fx_mask = (std::uint64_t{1} << (ku + 1)) - 1;
    const std::uint64_t x_mask = (std::uint64_t{1} << ku) - 1;

    double h_fx, h_x, h_fxy, h_xy;
    if (2 * k + 1 <= kDenseBits) {
        std::vector<std::uint64_t> joint(std::size_t{1} << (2 * ku + 1), 0);
        for_each_key(x, y, k, [&](std::uint64_t key) { ++joint[key]; });
        std::vector<std::uint64_t> fx(std::size_t{1} << (ku + 1), 0);
        std::vector<std::uint64_t> xp(std::size_t{1} << ku, 0);
        std::vector<std::uint64_t> xy(std::size_t{1} << (2 * ku), 0);
        for (std::uint64_t key = 0; key < joint.size(); ++key) {
            const auto c = joint[key];
            if (c == 0) continue;
            fx[key & fx_mask] += c;
            xp[(key >> 1) & x_mask] += c;
            xy[key >> 1] += c;
        }
        h_fx = mm_entropy(fx, n);
        h_x = mm_entropy(xp, n);
        h_fxy = mm_entropy(joint, n);
        h_xy = mm_entropy(xy, n);
    } else {
        std::vector<std::uint64_t> keys;
        keys.reserve(n);
        for_each_key(x, y, k, [&](std::uint64_t key) { keys.push_back(key); });
        std::vector<std::uint64_t> fx(keys.size()), xp(keys.size()), xy(keys.size());
        for (std::size_t i = 0; i < keys.size(); ++i) {
            fx[i] = keys[i] & fx_mask;
            xp[i] = (keys[i] >> 1) & x_mask;
            xy[i] = keys[i] >> 1;
        }
        h_fx = mm_entropy(run_counts(fx), n);
        h_x = mm_entropy(run_counts(xp), n);
        h_fxy = mm_entropy(run_counts(keys), n);
        h_xy = mm_entropy(run_counts(xy), n);
    }

    TransferEntropy te;
    te.samples = n;
    te.raw = (h_fx - h_x) - (h_fxy - h_xy);
    te.value = std::max(0.0, te.raw);
    return te;
}

TransferEntropy transfer_entropy(const ActivitySeries& x, const ActivitySeries& y, int k)
{
    if (x.bin_width != y.bin_width || x.origin != y.origin) {
        throw std::invalid_argument("series are not on the same bin grid");
    }
    return transfer_entropy(std::span<const std::uint8_t>(x.bins), std::span<const std::uint8_t>(y.bins), k);
}

TeTable pairwise_te(const StructuralGraph& graph, const std::map<UserId, ActivitySeries>& series, int k,
                    unsigned threads)
{
    std::vector<const ActivitySeries*> by_node(graph.node_count(), nullptr);
    for (NodeIndex i = 0; i < graph.node_count(); ++i) {
        auto it = series.find(graph.id(i));
        if (it == series.end()) throw DataError("no activity series for node '" + graph.id(i) + "'");
        by_node[i] = &it->second;
    }

    TeTable table;
    table.lag = k;
    table.weight.assign(graph.edge_count(), 0.0);
    table.raw.assign(graph.edge_count(), 0.0);
    const auto edges = graph.edges();
    parallel_for(edges.size(), threads, [&](std::size_t i) {
        const Edge& e = edges[i];
        auto te = transfer_entropy(*by_node[e.target], *by_node[e.source], k);
        table.weight[i] = te.value;
        table.raw[i] = te.raw;
    });
    return table;
}

} // namespace qocd
