#include "qocd/weighting.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qocd {

namespace {

WeightedDigraph zeroed(const StructuralGraph& graph, std::string scheme)
{
    return {graph, std::move(scheme), std::vector<double>(graph.edge_count(), 0.0)};
}

struct Interaction {
    NodeIndex actor;
    NodeIndex target;
};

// In-network interactions of one kind, self-targets dropped.
std::vector<Interaction> interactions(const StructuralGraph& graph, const EventLog& log, EventKind kind)
{
    std::vector<Interaction> out;
    for (const Event& e : log.events) {
        if (e.kind != kind || !e.target || *e.target == e.actor) continue;
        auto a = graph.find(e.actor);
        auto t = graph.find(*e.target);
        if (a && t) out.push_back({*a, *t});
    }
    return out;
}

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

} // namespace

WeightedDigraph weight_structural(const StructuralGraph& graph)
{
    return {graph, "structural", std::vector<double>(graph.edge_count(), 1.0)};
}

WeightedDigraph weight_te(const StructuralGraph& graph, const TeTable& table)
{
    if (table.weight.size() != graph.edge_count()) {
        throw std::invalid_argument("TE table does not match the graph's edge set");
    }
    return {graph, "te" + std::to_string(table.lag), table.weight};
}

WeightedDigraph weight_pR(const StructuralGraph& graph, const EventLog& log)
{
    auto wg = zeroed(graph, "pR");
    std::vector<double> made(graph.node_count(), 0.0);
    std::vector<double> hits(graph.edge_count(), 0.0);
    // retweet: actor f rebroadcasts target u, which lands on edge u -> f
    for (const auto& [f, u] : interactions(graph, log, EventKind::Retweet)) {
        made[f] += 1.0;
        if (auto ei = graph.edge_index(u, f)) hits[*ei] += 1.0;
    }
    const auto edges = graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        wg.weights[i] = ratio(hits[i], made[edges[i].target]);
    }
    return wg;
}

WeightedDigraph weight_pM(const StructuralGraph& graph, const EventLog& log)
{
    auto wg = zeroed(graph, "pM");
    std::vector<double> received(graph.node_count(), 0.0);
    std::vector<double> hits(graph.edge_count(), 0.0);
    // mention: actor u addresses target f, which lands on edge u -> f
    for (const auto& [u, f] : interactions(graph, log, EventKind::Mention)) {
        received[f] += 1.0;
        if (auto ei = graph.edge_index(u, f)) hits[*ei] += 1.0;
    }
    const auto edges = graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        wg.weights[i] = ratio(hits[i], received[edges[i].target]);
    }
    return wg;
}

WeightedDigraph weight_MR(const WeightedDigraph& pM, const WeightedDigraph& pR)
{
    if (pM.graph.edges().size() != pR.graph.edges().size() ||
        !std::equal(pM.graph.edges().begin(), pM.graph.edges().end(), pR.graph.edges().begin())) {
        throw std::invalid_argument("pM and pR weightings are over different edge sets");
    }
    auto wg = zeroed(pM.graph, "MR");
    for (std::size_t i = 0; i < wg.weights.size(); ++i) {
        wg.weights[i] = (pM.weights[i] + pR.weights[i]) / 2.0;
    }
    return wg;
}

WeightedDigraph weight_MR(const StructuralGraph& graph, const EventLog& log)
{
    return weight_MR(weight_pM(graph, log), weight_pR(graph, log));
}

std::map<UserId, HashtagVector> hashtag_vectors(const EventLog& log, const StructuralGraph& graph,
                                                double log_base)
{
    if (graph.empty()) throw std::invalid_argument("hashtag vectors need at least one user");
    if (!(log_base > 0.0) || log_base == 1.0) throw std::invalid_argument("invalid logarithm base");

    std::vector<std::map<std::string, double>> freq(graph.node_count());
    for (const Event& e : log.events) {
        if (e.kind != EventKind::Post || e.hashtags.empty()) continue;
        auto u = graph.find(e.actor);
        if (!u) continue;
        for (const auto& tag : e.hashtags) freq[*u][tag] += 1.0;
    }
    std::map<std::string, double> users_per_tag;
    for (const auto& f : freq) {
        for (const auto& [tag, c] : f) users_per_tag[tag] += 1.0;
    }

    const double n_users = static_cast<double>(graph.node_count());
    const double inv_log_base = 1.0 / std::log(log_base);
    std::map<UserId, HashtagVector> out;
    for (NodeIndex i = 0; i < graph.node_count(); ++i) {
        HashtagVector h;
        for (const auto& [tag, phi] : freq[i]) {
            const double n_i = users_per_tag[tag];
            if (n_i >= n_users) continue;
            h.emplace_hint(h.end(), tag, phi * std::log(n_users / n_i) * inv_log_base);
        }
        out.emplace_hint(out.end(), graph.id(i), std::move(h));
    }
    return out;
}

double cosine_similarity(const HashtagVector& a, const HashtagVector& b)
{
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [tag, v] : a) na += v * v;
    for (const auto& [tag, v] : b) nb += v * v;
    if (na == 0.0 || nb == 0.0) return 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            dot += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

WeightedDigraph weight_HT(const StructuralGraph& graph, const std::map<UserId, HashtagVector>& vectors)
{
    auto wg = zeroed(graph, "HT");
    static const HashtagVector empty;
    std::vector<const HashtagVector*> by_node(graph.node_count(), &empty);
    for (NodeIndex i = 0; i < graph.node_count(); ++i) {
        if (auto it = vectors.find(graph.id(i)); it != vectors.end()) by_node[i] = &it->second;
    }
    const auto edges = graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        wg.weights[i] = cosine_similarity(*by_node[edges[i].source], *by_node[edges[i].target]);
    }
    return wg;
}

std::vector<UserId> orphans(const WeightedDigraph& wg)
{
    std::vector<bool> touched(wg.graph.node_count(), false);
    const auto edges = wg.graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (wg.weights[i] > 0.0) {
            touched[edges[i].source] = true;
            touched[edges[i].target] = true;
        }
    }
    std::vector<UserId> out;
    for (NodeIndex i = 0; i < wg.graph.node_count(); ++i) {
        if (!touched[i]) out.push_back(wg.graph.id(i));
    }
    return out;
}

} // namespace qocd
