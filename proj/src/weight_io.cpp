#include "qocd/weight_io.hpp"

#include "file_util.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

namespace qocd {

std::string format_weight(double w)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", w);
    return buf;
}

void write_weight_table(std::ostream& out, const WeightedDigraph& wg)
{
    out << "source,target,weight\n";
    const auto edges = wg.graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        out << wg.graph.id(edges[i].source) << ',' << wg.graph.id(edges[i].target) << ','
            << format_weight(wg.weights[i]) << '\n';
    }
}

void write_weight_table(const std::filesystem::path& path, const WeightedDigraph& wg)
{
    auto out = detail::open_output(path);
    write_weight_table(out, wg);
    detail::check_written(out, path);
}

void write_weighting(const std::filesystem::path& path, const WeightedDigraph& wg, nlohmann::ordered_json metadata)
{
    write_weight_table(path, wg);
    metadata["scheme"] = wg.scheme;
    metadata["edges"] = wg.graph.edge_count();
    metadata["nodes"] = wg.graph.node_count();
    auto sidecar_path = path;
    sidecar_path += ".json";
    auto out = detail::open_output(sidecar_path);
    out << metadata.dump(2) << '\n';
    detail::check_written(out, sidecar_path);
}

WeightedDigraph read_weight_table(std::istream& in, std::string scheme)
{
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::pair<UserId, UserId>> pairs;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "source,target,weight") throw DataError("weight table must start with 'source,target,weight'");
            continue;
        }
        auto c1 = line.find(',');
        auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) {
            throw DataError("malformed weight row at line " + std::to_string(line_no));
        }
        std::string w = line.substr(c2 + 1);
        char* end = nullptr;
        errno = 0;
        double value = std::strtod(w.c_str(), &end);
        if (w.empty() || *end != '\0' || errno == ERANGE || !(value >= 0.0)) {
            throw DataError("bad weight at line " + std::to_string(line_no));
        }
        pairs.emplace_back(line.substr(0, c1), line.substr(c1 + 1, c2 - c1 - 1));
        values.push_back(value);
    }

    WeightedDigraph wg{StructuralGraph::from_edges(pairs), std::move(scheme), {}};
    if (wg.graph.edge_count() != pairs.size()) throw DataError("weight table lists an edge twice");
    wg.weights.assign(pairs.size(), 0.0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto s = wg.graph.find(pairs[i].first);
        auto t = wg.graph.find(pairs[i].second);
        wg.weights[*wg.graph.edge_index(*s, *t)] = values[i];
    }
    return wg;
}

WeightedDigraph read_weight_table(const std::filesystem::path& path)
{
    auto in = detail::open_input(path);
    return read_weight_table(in, path.stem().string());
}

} // namespace qocd
