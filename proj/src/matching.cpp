#include "sepnn/matching.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "sepnn/shortest_paths.hpp"

namespace sepnn {

Matching greedy_stable_matching(ReactiveNN& r, std::span<const NodeId> sites,
                                MatchingStats* stats) {
    const Graph& g = r.hierarchy().graph();
    std::vector<NodeId> order(sites.begin(), sites.end());
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());

    Matching m;
    if (order.empty()) return m;
    for (NodeId s : order)
        if (!r.sites().enabled(s))
            throw std::invalid_argument("site " + std::to_string(s) + " is not enabled");

    // Reachability pre-check, before any mutation: on an undirected graph all
    // pairwise distances are finite iff every site reaches the first one; a
    // directed graph additionally needs the reverse direction.
    {
        DistanceArray fwd = dijkstra(g, order.front());
        for (NodeId s : order)
            if (!fwd.reachable(s))
                throw std::invalid_argument("sites " + std::to_string(order.front()) + " and " +
                                            std::to_string(s) + " are mutually unreachable");
        if (g.directed()) {
            DistanceArray rev = dijkstra_reverse(g, order.front());
            for (NodeId s : order)
                if (!rev.reachable(s))
                    throw std::invalid_argument("sites " + std::to_string(s) + " and " +
                                                std::to_string(order.front()) +
                                                " are mutually unreachable");
        }
    }

    MatchingStats local_stats;
    MatchingStats& st = stats ? *stats : local_stats;
    st = {};

    std::vector<NodeId> stack;
    std::size_t next_seed = 0;  // scan position for the smallest-id enabled seed
    std::size_t matched = 0;
    while (order.size() - matched >= 2) {
        if (stack.empty()) {
            while (!r.sites().enabled(order[next_seed])) ++next_seed;
            stack.push_back(order[next_seed]);
        }
        NodeId top = stack.back();
        ++st.nn_calls;
        std::optional<NNAnswer> nn = r.nearest_other(top);
        if (!nn)
            throw std::logic_error("no reachable site despite the reachability pre-check");
        NodeId u = nn->site;
        if (stack.size() >= 2 && stack[stack.size() - 2] == u) {
            stack.pop_back();
            stack.pop_back();
            m.pairs.emplace_back(std::min(top, u), std::max(top, u));
            r.disable(top);
            r.disable(u);
            st.disable_calls += 2;
            matched += 2;
        } else {
            stack.push_back(u);
        }
    }
    if (order.size() % 2 == 1) {
        // Exactly one site is left enabled.
        for (NodeId s : order)
            if (r.sites().enabled(s)) {
                m.unmatched = s;
                break;
            }
    }
    return m;
}

std::vector<std::pair<NodeId, NodeId>> verify_stability(const Graph& g, const Matching& m) {
    std::vector<NodeId> sites;
    std::unordered_map<NodeId, NodeId> partner;
    for (const auto& [a, b] : m.pairs) {
        sites.push_back(a);
        sites.push_back(b);
        partner[a] = b;
        partner[b] = a;
    }
    if (m.unmatched) sites.push_back(*m.unmatched);
    std::sort(sites.begin(), sites.end());

    std::unordered_map<NodeId, std::size_t> site_index;
    for (std::size_t i = 0; i < sites.size(); ++i) site_index[sites[i]] = i;

    // All-pairs distances over the sites.
    std::vector<std::vector<double>> d(sites.size(), std::vector<double>(sites.size()));
    for (std::size_t i = 0; i < sites.size(); ++i) {
        DistanceArray da = dijkstra(g, sites[i]);
        for (std::size_t j = 0; j < sites.size(); ++j) d[i][j] = da.dist[sites[j]];
    }
    auto partner_dist = [&](std::size_t i) {
        auto it = partner.find(sites[i]);
        if (it == partner.end()) return kInfDist;
        return d[i][site_index[it->second]];
    };

    std::vector<std::pair<NodeId, NodeId>> blocking;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        double di = partner_dist(i);
        for (std::size_t j = i + 1; j < sites.size(); ++j) {
            auto it = partner.find(sites[i]);
            if (it != partner.end() && it->second == sites[j]) continue;  // matched together
            if (d[i][j] < di && d[i][j] < partner_dist(j))
                blocking.emplace_back(sites[i], sites[j]);
        }
    }
    return blocking;
}

}  // namespace sepnn
