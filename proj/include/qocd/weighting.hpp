#pragma once

#include "qocd/activity.hpp"
#include "qocd/graph.hpp"
#include "qocd/infotheory.hpp"
#include "qocd/ingest.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace qocd {

/// Structural edge set with one non-negative weight per edge. weights[i]
/// belongs to graph.edges()[i]; zero weights are kept.
struct WeightedDigraph {
    StructuralGraph graph;
    std::string scheme;
    std::vector<double> weights;
};

WeightedDigraph weight_structural(const StructuralGraph& graph);

/// TE(k) weighting; scheme label "te<k>".
WeightedDigraph weight_te(const StructuralGraph& graph, const TeTable& table);

/// w(u->f) = retweets of u by f / retweets f made of in-network users; 0/0 -> 0.
WeightedDigraph weight_pR(const StructuralGraph& graph, const EventLog& log);

/// w(u->f) = mentions of f by u / mentions of f by in-network users; 0/0 -> 0.
WeightedDigraph weight_pM(const StructuralGraph& graph, const EventLog& log);

/// Arithmetic mean of pM and pR per edge.
WeightedDigraph weight_MR(const StructuralGraph& graph, const EventLog& log);
WeightedDigraph weight_MR(const WeightedDigraph& pM, const WeightedDigraph& pR);

using HashtagVector = std::map<std::string, double>;

/// h_i(u) = phi_i(u) * log(N / n_i) with N = |nodes| and n_i the number of
/// nodes that used tag i in a post. Zero entries are omitted. `log_base`
/// defaults to e.
std::map<UserId, HashtagVector> hashtag_vectors(const EventLog& log, const StructuralGraph& graph,
                                                double log_base = std::numbers::e);

double cosine_similarity(const HashtagVector& a, const HashtagVector& b);

/// Cosine of the endpoint vectors; 0 when either vector is empty.
WeightedDigraph weight_HT(const StructuralGraph& graph, const std::map<UserId, HashtagVector>& vectors);

/// Nodes whose incident edges (both directions) all have weight zero.
std::vector<UserId> orphans(const WeightedDigraph& wg);

} // namespace qocd
