// Shared test helpers: deterministic graph generators and the independent
// oracles the unit and acceptance suites check against.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sepnn/graph.hpp"
#include "sepnn/shortest_paths.hpp"
#include "sepnn/workload.hpp"

namespace testsupport {

using namespace sepnn;

// Weights are drawn from the lattice {1..10240}/1024, i.e. uniform multiples
// of 2^-10 in (0, 10]. Every path sum is then exactly representable in a
// double, so distances computed by different summation orders (oracle vs.
// table lookups) compare bitwise equal.
inline double lattice_weight(Rng& rng) {
    return static_cast<double>(1 + rng.below(10240)) / 1024.0;
}

// w x h grid with coordinates (x, y); node id = y*w + x.
inline Graph make_grid(NodeId w, NodeId h, Rng* rng = nullptr) {
    Graph g(w * h, false);
    std::vector<Coord> coords(static_cast<std::size_t>(w) * h);
    auto id = [w](NodeId x, NodeId y) { return y * w + x; };
    for (NodeId y = 0; y < h; ++y)
        for (NodeId x = 0; x < w; ++x) {
            coords[id(x, y)] = {static_cast<double>(x), static_cast<double>(y)};
            if (x + 1 < w) g.add_edge(id(x, y), id(x + 1, y), rng ? lattice_weight(*rng) : 1.0);
            if (y + 1 < h) g.add_edge(id(x, y), id(x, y + 1), rng ? lattice_weight(*rng) : 1.0);
        }
    g.set_coords(std::move(coords));
    return g;
}

// Random tree: each node i >= 1 hangs off a uniform earlier node.
inline Graph make_random_tree(NodeId n, Rng& rng) {
    Graph g(n, false);
    for (NodeId i = 1; i < n; ++i)
        g.add_edge(i, static_cast<NodeId>(rng.below(i)), lattice_weight(rng));
    return g;
}

// Strongly connected random digraph with coordinates: a random Hamiltonian
// cycle plus `extra_arcs` random arcs.
inline Graph make_random_digraph(NodeId n, std::size_t extra_arcs, Rng& rng) {
    Graph g(n, true);
    std::vector<Coord> coords(n);
    for (NodeId v = 0; v < n; ++v)
        coords[v] = {static_cast<double>(rng.below(4 * n)), static_cast<double>(rng.below(4 * n))};
    std::vector<std::uint32_t> perm = rng.distinct(n, n);
    for (NodeId i = 0; i < n; ++i)
        g.add_edge(perm[i], perm[(i + 1) % n], lattice_weight(rng));
    for (std::size_t i = 0; i < extra_arcs; ++i) {
        NodeId u = static_cast<NodeId>(rng.below(n));
        NodeId v = static_cast<NodeId>(rng.below(n));
        if (u != v) g.add_edge(u, v, lattice_weight(rng));
    }
    g.set_coords(std::move(coords));
    return g;
}

// Bellman-Ford; the independent distance oracle.
inline std::vector<double> bellman_ford(const Graph& g, NodeId source) {
    std::vector<double> dist(g.node_count(), kInfDist);
    dist[source] = 0.0;
    for (NodeId round = 0; round + 1 < std::max<NodeId>(g.node_count(), 1); ++round) {
        bool changed = false;
        for (NodeId u = 0; u < g.node_count(); ++u) {
            if (dist[u] == kInfDist) continue;
            for (const Arc& a : g.out(u))
                if (dist[u] + a.weight < dist[a.to]) {
                    dist[a.to] = dist[u] + a.weight;
                    changed = true;
                }
        }
        if (!changed) break;
    }
    return dist;
}

// Oracle for nearest(): full Dijkstra from q, minimum over enabled sites with
// the (distance, id) tie-break.
inline std::optional<NNAnswer> oracle_nearest(const Graph& g, NodeId q,
                                              const std::vector<char>& enabled) {
    DistanceArray da = dijkstra(g, q);
    NNAnswer best{kNoNode, kInfDist};
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!enabled[v] || da.dist[v] == kInfDist) continue;
        if (da.dist[v] < best.dist || (da.dist[v] == best.dist && v < best.site))
            best = {v, da.dist[v]};
    }
    if (best.site == kNoNode) return std::nullopt;
    return best;
}

// Naive greedy matching: repeatedly extract the pair with the smallest
// (distance, smaller id, larger id); the oracle for greedy_stable_matching.
inline std::vector<std::pair<NodeId, NodeId>> brute_force_greedy_pairs(
    const Graph& g, std::vector<NodeId> sites) {
    std::sort(sites.begin(), sites.end());
    std::vector<std::vector<double>> d(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        DistanceArray da = dijkstra(g, sites[i]);
        d[i].resize(sites.size());
        for (std::size_t j = 0; j < sites.size(); ++j) d[i][j] = da.dist[sites[j]];
    }
    std::vector<char> gone(sites.size(), 0);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    std::size_t remaining = sites.size();
    while (remaining >= 2) {
        std::size_t bi = 0, bj = 0;
        double best = kInfDist;
        for (std::size_t i = 0; i < sites.size(); ++i) {
            if (gone[i]) continue;
            for (std::size_t j = i + 1; j < sites.size(); ++j) {
                if (gone[j]) continue;
                if (d[i][j] < best) {
                    best = d[i][j];
                    bi = i;
                    bj = j;
                }
            }
        }
        gone[bi] = gone[bj] = 1;
        remaining -= 2;
        pairs.emplace_back(sites[bi], sites[bj]);
    }
    return pairs;
}

// Pair-distance multiset of a matching (exact doubles, sorted).
inline std::vector<double> pair_distances(const Graph& g,
                                          const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    std::vector<double> out;
    for (const auto& [a, b] : pairs) out.push_back(dijkstra(g, a).dist[b]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace testsupport
