#pragma once

#include "qocd/graph.hpp"
#include "qocd/weighting.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace qocd {

/// A set of possibly overlapping communities (each of size >= 2) over a node
/// universe. Uncovered universe members are singletons, each with a synthetic
/// community id numbered after the listed communities.
class Covering {
public:
    Covering() = default;

    /// Throws DataError naming any member outside the universe. Communities
    /// with fewer than two distinct members are dropped (their members become
    /// singletons unless covered elsewhere); exact duplicates are dropped.
    Covering(std::vector<UserId> universe, const std::vector<std::vector<UserId>>& communities);

    std::span<const UserId> universe() const { return universe_; }
    std::size_t universe_size() const { return universe_.size(); }
    const std::vector<std::vector<NodeIndex>>& communities() const { return communities_; }
    std::span<const NodeIndex> singletons() const { return singletons_; }

    std::size_t community_count() const { return communities_.size(); }
    std::size_t singleton_count() const { return singletons_.size(); }

    std::optional<NodeIndex> find(std::string_view id) const;
    const UserId& id(NodeIndex i) const { return universe_[i]; }

    /// Sorted community ids of node i; never empty.
    std::span<const std::size_t> memberships(NodeIndex i) const { return memberships_[i]; }

    /// Member lists of all communities followed by one row per singleton.
    std::vector<std::vector<NodeIndex>> rows() const;

private:
    std::vector<UserId> universe_;
    std::vector<std::vector<NodeIndex>> communities_;
    std::vector<NodeIndex> singletons_;
    std::vector<std::vector<std::size_t>> memberships_;
};

/// Reads one community per line, ids separated by whitespace. Lines starting
/// with '#' are comments.
Covering import_covering(std::istream& in, std::vector<UserId> universe);
Covering import_covering(const std::filesystem::path& path, std::vector<UserId> universe);

void export_covering(std::ostream& out, const Covering& c);
void export_covering(const std::filesystem::path& path, const Covering& c);

struct CoveringStats {
    std::size_t communities = 0;
    std::size_t singletons = 0;
    std::vector<std::size_t> sizes;  // non-singleton community sizes, in community order
};

CoveringStats covering_stats(const Covering& c);

struct FitnessParams {
    double alpha = 1.0;
};

/// f(C) = w_in / (w_in + w_bnd)^alpha over positive-weight edges, direction
/// ignored. Zero when C touches no positive weight.
double community_fitness(const WeightedDigraph& wg, std::span<const NodeIndex> members,
                         const FitnessParams& params = {});

bool has_positive_weight(const WeightedDigraph& wg);

/// Deterministic greedy local fitness expansion. Seeds are taken in order of
/// decreasing total incident weight (ties by id), skipping covered nodes.
/// Each step adds the neighbour that raises fitness most, then drops members
/// (never the seed) while a removal raises it, until no move helps.
/// With no positive weight at all, every node is a singleton.
Covering detect_overlapping(const WeightedDigraph& wg, const FitnessParams& params = {});

} // namespace qocd
