#include "qocd/edgestats.hpp"

#include "file_util.hpp"
#include "qocd/error.hpp"
#include "qocd/weight_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace qocd {

std::string_view to_string(EdgeClass c)
{
    switch (c) {
    case EdgeClass::Inter: return "inter";
    case EdgeClass::Intra: return "intra";
    case EdgeClass::Mixed: return "mixed";
    }
    return "inter";
}

EdgeClass classify_edge(std::span<const std::size_t> mu, std::span<const std::size_t> mf)
{
    if (mu.empty() || mf.empty()) throw std::invalid_argument("empty membership set");
    if (std::equal(mu.begin(), mu.end(), mf.begin(), mf.end())) return EdgeClass::Intra;
    auto a = mu.begin();
    auto b = mf.begin();
    while (a != mu.end() && b != mf.end()) {
        if (*a < *b) {
            ++a;
        } else if (*b < *a) {
            ++b;
        } else {
            return EdgeClass::Mixed;
        }
    }
    return EdgeClass::Inter;
}

std::vector<EdgeClass> partition_edges(const WeightedDigraph& wg, const Covering& c)
{
    const auto& g = wg.graph;
    std::vector<NodeIndex> to_cover(g.node_count());
    for (NodeIndex i = 0; i < g.node_count(); ++i) {
        auto j = c.find(g.id(i));
        if (!j) throw DataError("node '" + g.id(i) + "' has no community membership");
        to_cover[i] = *j;
    }
    std::vector<EdgeClass> out;
    out.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
        out.push_back(classify_edge(c.memberships(to_cover[e.source]), c.memberships(to_cover[e.target])));
    }
    return out;
}

std::optional<double> lower_median(std::vector<double> values)
{
    if (values.empty()) return std::nullopt;
    const std::size_t mid = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    return values[mid];
}

std::vector<CcdfPoint> empirical_ccdf(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    std::vector<CcdfPoint> out;
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size();) {
        std::size_t j = i;
        while (j < values.size() && values[j] == values[i]) ++j;
        out.push_back({values[i], static_cast<double>(values.size() - j) / n});
        i = j;
    }
    return out;
}

ConditionalWeightReport conditional_weights(const WeightedDigraph& wg, std::span<const EdgeClass> classes,
                                            std::size_t bins)
{
    if (classes.size() != wg.weights.size()) throw std::invalid_argument("one class per edge required");
    if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");

    ConditionalWeightReport report;
    report.scheme = wg.scheme;
    report.edge_count = wg.weights.size();

    std::array<std::vector<double>, 3> grouped;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        grouped[static_cast<std::size_t>(classes[i])].push_back(wg.weights[i]);
    }

    double lo = 0.0, hi = 1.0;
    if (!wg.weights.empty()) {
        auto [mn, mx] = std::minmax_element(wg.weights.begin(), wg.weights.end());
        lo = *mn;
        hi = *mx > *mn ? *mx : *mn + 1.0;
    }
    std::vector<double> boundaries(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) {
        boundaries[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    }

    for (EdgeClass c : kEdgeClasses) {
        auto& values = grouped[static_cast<std::size_t>(c)];
        ClassWeights& cw = report.classes[static_cast<std::size_t>(c)];
        cw.edge_class = c;
        cw.count = values.size();
        cw.histogram.edges = boundaries;
        cw.histogram.counts.assign(bins, 0);
        if (values.empty()) continue;
        auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        cw.min = *mn;
        cw.max = *mx;
        cw.median = lower_median(values);
        for (double w : values) {
            auto b = static_cast<std::size_t>((w - lo) / (hi - lo) * static_cast<double>(bins));
            ++cw.histogram.counts[std::min(b, bins - 1)];
        }
        cw.ccdf = empirical_ccdf(std::move(values));
    }
    return report;
}

std::vector<std::pair<std::size_t, double>> size_ccdf(const Covering& c)
{
    std::vector<std::size_t> sizes;
    for (const auto& m : c.communities()) sizes.push_back(m.size());
    std::sort(sizes.begin(), sizes.end());
    std::vector<std::pair<std::size_t, double>> out;
    const double n = static_cast<double>(sizes.size());
    for (std::size_t i = 0; i < sizes.size();) {
        std::size_t j = i;
        while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
        out.emplace_back(sizes[i], static_cast<double>(sizes.size() - j) / n);
        i = j;
    }
    return out;
}

namespace {

nlohmann::ordered_json optional_json(const std::optional<double>& v)
{
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string optional_csv(const std::optional<double>& v) { return v ? format_weight(*v) : "NA"; }

} // namespace

void write_edge_report(const ConditionalWeightReport& report, const std::filesystem::path& prefix)
{
    auto with_suffix = [&](const std::string& suffix) {
        auto p = prefix;
        p += suffix;
        return p;
    };

    const auto csv_path = with_suffix(".csv");
    auto csv = detail::open_output(csv_path);
    csv << "class,statistic,value\n";
    nlohmann::ordered_json summary;
    summary["covering"] = report.covering;
    summary["scheme"] = report.scheme;
    summary["edges"] = report.edge_count;
    for (const auto& cw : report.classes) {
        const auto name = std::string(to_string(cw.edge_class));
        csv << name << ",count," << cw.count << '\n';
        csv << name << ",median," << optional_csv(cw.median) << '\n';
        csv << name << ",min," << optional_csv(cw.min) << '\n';
        csv << name << ",max," << optional_csv(cw.max) << '\n';
        for (std::size_t b = 0; b < cw.histogram.counts.size(); ++b) {
            csv << name << ",hist[" << format_weight(cw.histogram.edges[b]) << ':'
                << format_weight(cw.histogram.edges[b + 1]) << ")," << cw.histogram.counts[b] << '\n';
        }
        auto& j = summary["classes"][name];
        j["count"] = cw.count;
        j["median"] = optional_json(cw.median);
        j["min"] = optional_json(cw.min);
        j["max"] = optional_json(cw.max);
        j["histogram"]["edges"] = cw.histogram.edges;
        j["histogram"]["counts"] = cw.histogram.counts;

        const auto ccdf_path = with_suffix("_ccdf_" + name + ".csv");
        auto ccdf = detail::open_output(ccdf_path);
        ccdf << "weight,fraction_above\n";
        for (const auto& p : cw.ccdf) ccdf << format_weight(p.value) << ',' << format_weight(p.fraction_above) << '\n';
        detail::check_written(ccdf, ccdf_path);
    }
    detail::check_written(csv, csv_path);

    const auto json_path = with_suffix(".json");
    auto js = detail::open_output(json_path);
    js << summary.dump(2) << '\n';
    detail::check_written(js, json_path);
}

void write_size_ccdf(const std::vector<std::pair<std::size_t, double>>& ccdf, const std::filesystem::path& path)
{
    auto out = detail::open_output(path);
    out << "size,fraction_larger\n";
    for (const auto& [s, f] : ccdf) out << s << ',' << format_weight(f) << '\n';
    detail::check_written(out, path);
}

} // namespace qocd
