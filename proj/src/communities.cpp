#include "qocd/communities.hpp"

#include "file_util.hpp"
#include "qocd/error.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qocd {

Covering::Covering(std::vector<UserId> universe, const std::vector<std::vector<UserId>>& communities)
    : universe_(std::move(universe))
{
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());

    std::set<std::vector<NodeIndex>> seen;
    for (const auto& members : communities) {
        std::vector<NodeIndex> idx;
        idx.reserve(members.size());
        for (const auto& m : members) {
            auto i = find(m);
            if (!i) throw DataError("community member '" + m + "' is not in the universe");
            idx.push_back(*i);
        }
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        if (idx.size() < 2 || !seen.insert(idx).second) continue;
        communities_.push_back(std::move(idx));
    }

    memberships_.assign(universe_.size(), {});
    for (std::size_t c = 0; c < communities_.size(); ++c) {
        for (NodeIndex i : communities_[c]) memberships_[i].push_back(c);
    }
    for (NodeIndex i = 0; i < universe_.size(); ++i) {
        if (memberships_[i].empty()) {
            memberships_[i].push_back(communities_.size() + singletons_.size());
            singletons_.push_back(i);
        }
    }
}

std::optional<NodeIndex> Covering::find(std::string_view id) const
{
    auto it = std::lower_bound(universe_.begin(), universe_.end(), id,
                               [](const UserId& a, std::string_view b) { return a < b; });
    if (it == universe_.end() || *it != id) return std::nullopt;
    return static_cast<NodeIndex>(it - universe_.begin());
}

std::vector<std::vector<NodeIndex>> Covering::rows() const
{
    auto out = communities_;
    for (NodeIndex s : singletons_) out.push_back({s});
    return out;
}

Covering import_covering(std::istream& in, std::vector<UserId> universe)
{
    std::vector<std::vector<UserId>> communities;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first) || first.front() == '#') continue;
        std::vector<UserId> members{first};
        for (std::string id; fields >> id;) members.push_back(id);
        communities.push_back(std::move(members));
    }
    if (in.bad()) throw DataError("error while reading covering");
    return Covering(std::move(universe), communities);
}

Covering import_covering(const std::filesystem::path& path, std::vector<UserId> universe)
{
    auto in = detail::open_input(path);
    return import_covering(in, std::move(universe));
}

void export_covering(std::ostream& out, const Covering& c)
{
    for (const auto& members : c.communities()) {
        for (std::size_t j = 0; j < members.size(); ++j) {
            out << (j ? " " : "") << c.id(members[j]);
        }
        out << '\n';
    }
}

void export_covering(const std::filesystem::path& path, const Covering& c)
{
    auto out = detail::open_output(path);
    export_covering(out, c);
    detail::check_written(out, path);
}

CoveringStats covering_stats(const Covering& c)
{
    CoveringStats s;
    s.communities = c.community_count();
    s.singletons = c.singleton_count();
    for (const auto& m : c.communities()) s.sizes.push_back(m.size());
    return s;
}

namespace {

struct Neighbor {
    NodeIndex node;
    double weight;
};

// Undirected view of the positive-weight edges; u->v and v->u merge.
struct UndirectedView {
    std::vector<std::vector<Neighbor>> adj;
    std::vector<double> strength;

    explicit UndirectedView(const WeightedDigraph& wg)
        : adj(wg.graph.node_count()), strength(wg.graph.node_count(), 0.0)
    {
        const auto edges = wg.graph.edges();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const double w = wg.weights[i];
            if (!(w > 0.0)) continue;
            adj[edges[i].source].push_back({edges[i].target, w});
            adj[edges[i].target].push_back({edges[i].source, w});
        }
        for (NodeIndex u = 0; u < adj.size(); ++u) {
            auto& list = adj[u];
            std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
            std::vector<Neighbor> merged;
            for (const auto& nb : list) {
                if (!merged.empty() && merged.back().node == nb.node) {
                    merged.back().weight += nb.weight;
                } else {
                    merged.push_back(nb);
                }
            }
            list = std::move(merged);
            for (const auto& nb : list) strength[u] += nb.weight;
        }
    }
};

double fitness_value(double w_in, double w_bnd, double alpha)
{
    const double total = w_in + w_bnd;
    if (!(total > 0.0)) return 0.0;
    return w_in / std::pow(total, alpha);
}

// Moves must beat the current fitness by more than rounding noise from the
// incremental bookkeeping.
constexpr double kImprovement = 1e-12;

class Expansion {
public:
    Expansion(const UndirectedView& view, double alpha)
        : view_(view), alpha_(alpha), in_c_(view.adj.size(), false), k_in_(view.adj.size(), 0.0),
          links_(view.adj.size(), 0)
    {
    }

    std::vector<NodeIndex> grow(NodeIndex seed)
    {
        reset();
        add(seed);
        double current = fitness();
        for (;;) {
            // Best addition among neighbours; ascending index keeps the
            // lowest id on ties.
            std::optional<NodeIndex> best;
            double best_f = current;
            for (NodeIndex v : frontier_) {
                const double f = fitness_value(w_in_ + k_in_[v], w_bnd_ + view_.strength[v] - 2.0 * k_in_[v], alpha_);
                if (f > best_f + kImprovement && (!best || f > best_f)) {
                    best = v;
                    best_f = f;
                }
            }
            if (!best) break;
            add(*best);
            current = fitness();

            for (;;) {
                std::optional<NodeIndex> drop;
                double drop_f = current;
                for (NodeIndex v : members_) {
                    if (v == seed) continue;
                    const double f =
                        fitness_value(w_in_ - k_in_[v], w_bnd_ - view_.strength[v] + 2.0 * k_in_[v], alpha_);
                    if (f > drop_f + kImprovement && (!drop || f > drop_f)) {
                        drop = v;
                        drop_f = f;
                    }
                }
                if (!drop) break;
                remove(*drop);
                current = fitness();
            }
        }
        return {members_.begin(), members_.end()};
    }

private:
    double fitness() const { return fitness_value(w_in_, w_bnd_, alpha_); }

    void reset()
    {
        for (NodeIndex v : touched_) {
            in_c_[v] = false;
            k_in_[v] = 0.0;
            links_[v] = 0;
        }
        touched_.clear();
        members_.clear();
        frontier_.clear();
        w_in_ = w_bnd_ = 0.0;
    }

    void add(NodeIndex v)
    {
        w_in_ += k_in_[v];
        w_bnd_ += view_.strength[v] - 2.0 * k_in_[v];
        in_c_[v] = true;
        touched_.push_back(v);
        members_.insert(v);
        frontier_.erase(v);
        for (const auto& nb : view_.adj[v]) {
            touched_.push_back(nb.node);
            k_in_[nb.node] += nb.weight;
            if (links_[nb.node]++ == 0 && !in_c_[nb.node]) frontier_.insert(nb.node);
        }
    }

    void remove(NodeIndex v)
    {
        w_in_ -= k_in_[v];
        w_bnd_ -= view_.strength[v] - 2.0 * k_in_[v];
        in_c_[v] = false;
        members_.erase(v);
        if (links_[v] > 0) frontier_.insert(v);
        for (const auto& nb : view_.adj[v]) {
            k_in_[nb.node] -= nb.weight;
            if (--links_[nb.node] == 0) {
                k_in_[nb.node] = 0.0;
                frontier_.erase(nb.node);
            }
        }
    }

    const UndirectedView& view_;
    double alpha_;
    std::vector<bool> in_c_;
    std::vector<double> k_in_;     // weight between v and the community
    std::vector<std::size_t> links_;  // positive-weight neighbours of v inside the community
    std::vector<NodeIndex> touched_;
    std::set<NodeIndex> members_;
    std::set<NodeIndex> frontier_;
    double w_in_ = 0.0;
    double w_bnd_ = 0.0;
};

} // namespace

double community_fitness(const WeightedDigraph& wg, std::span<const NodeIndex> members, const FitnessParams& params)
{
    std::vector<bool> in_c(wg.graph.node_count(), false);
    for (NodeIndex m : members) in_c.at(m) = true;
    double w_in = 0.0, w_bnd = 0.0;
    const auto edges = wg.graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!(wg.weights[i] > 0.0)) continue;
        const bool a = in_c[edges[i].source];
        const bool b = in_c[edges[i].target];
        if (a && b) {
            w_in += wg.weights[i];
        } else if (a || b) {
            w_bnd += wg.weights[i];
        }
    }
    return fitness_value(w_in, w_bnd, params.alpha);
}

bool has_positive_weight(const WeightedDigraph& wg)
{
    return std::any_of(wg.weights.begin(), wg.weights.end(), [](double w) { return w > 0.0; });
}

Covering detect_overlapping(const WeightedDigraph& wg, const FitnessParams& params)
{
    if (!(params.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    std::vector<UserId> universe(wg.graph.nodes().begin(), wg.graph.nodes().end());
    if (!has_positive_weight(wg)) return Covering(std::move(universe), {});

    const UndirectedView view(wg);
    std::vector<NodeIndex> order(wg.graph.node_count());
    std::iota(order.begin(), order.end(), NodeIndex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeIndex a, NodeIndex b) { return view.strength[a] > view.strength[b]; });

    std::vector<bool> covered(order.size(), false);
    std::vector<std::vector<UserId>> found;
    Expansion expansion(view, params.alpha);
    for (NodeIndex seed : order) {
        if (covered[seed] || !(view.strength[seed] > 0.0)) continue;
        auto members = expansion.grow(seed);
        if (members.size() < 2) continue;
        std::vector<UserId> ids;
        for (NodeIndex m : members) {
            covered[m] = true;
            ids.push_back(wg.graph.id(m));
        }
        found.push_back(std::move(ids));
    }
    return Covering(std::move(universe), found);
}

} // namespace qocd
