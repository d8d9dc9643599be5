#include "sepnn/shortest_paths.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace sepnn {

namespace {

using HeapItem = std::pair<double, NodeId>;  // (distance, node); id breaks ties

// Settles nodes in (distance, id) order. `forward` selects out- or in-arcs;
// a null mask means no restriction.
DistanceArray run_dijkstra(const Graph& g, NodeId source, bool forward,
                           const std::vector<char>* mask) {
    g.check_node(source);
    DistanceArray da;
    da.source = source;
    da.dist.assign(g.node_count(), kInfDist);

    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;
    da.dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d != da.dist[u]) continue;  // stale entry
        std::span<const Arc> arcs = forward ? g.out(u) : g.in(u);
        for (const Arc& a : arcs) {
            if (mask && !(*mask)[a.to]) continue;
            double nd = d + a.weight;
            if (nd < da.dist[a.to]) {
                da.dist[a.to] = nd;
                heap.push({nd, a.to});
            }
        }
    }
    return da;
}

DistanceArray run_restricted(const Graph& g, NodeId source, bool forward,
                             std::span<const NodeId> restrict_to) {
    std::vector<char> mask(g.node_count(), 0);
    bool source_in = false;
    for (NodeId v : restrict_to) {
        g.check_node(v);
        mask[v] = 1;
        source_in |= (v == source);
    }
    if (!source_in)
        throw std::invalid_argument("restrict_to must contain the source node");
    return run_dijkstra(g, source, forward, &mask);
}

}  // namespace

DistanceArray dijkstra(const Graph& g, NodeId source) {
    return run_dijkstra(g, source, /*forward=*/true, nullptr);
}

DistanceArray dijkstra(const Graph& g, NodeId source, std::span<const NodeId> restrict_to) {
    return run_restricted(g, source, /*forward=*/true, restrict_to);
}

DistanceArray dijkstra_reverse(const Graph& g, NodeId source) {
    return run_dijkstra(g, source, /*forward=*/false, nullptr);
}

DistanceArray dijkstra_reverse(const Graph& g, NodeId source,
                               std::span<const NodeId> restrict_to) {
    return run_restricted(g, source, /*forward=*/false, restrict_to);
}

std::optional<NNAnswer> nearest_by_dijkstra(const Graph& g, NodeId q,
                                            const std::vector<char>& enabled) {
    g.check_node(q);
    std::vector<double> dist(g.node_count(), kInfDist);
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;
    dist[q] = 0.0;
    heap.push({0.0, q});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d != dist[u]) continue;
        // Settling in (distance, id) order makes the first settled site the
        // nearest one with the smallest id among equidistant sites.
        if (enabled[u]) return NNAnswer{u, d};
        for (const Arc& a : g.out(u)) {
            double nd = d + a.weight;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                heap.push({nd, a.to});
            }
        }
    }
    return std::nullopt;
}

std::optional<NNAnswer> nearest_by_dijkstra(const Graph& g, NodeId q,
                                            std::span<const NodeId> sites) {
    std::vector<char> enabled(g.node_count(), 0);
    for (NodeId s : sites) {
        g.check_node(s);
        enabled[s] = 1;
    }
    return nearest_by_dijkstra(g, q, enabled);
}

NearestSiteSearch::NearestSiteSearch(const Graph& g)
    : graph_(&g), dist_(g.node_count(), kInfDist), stamp_(g.node_count(), 0) {}

std::optional<NNAnswer> NearestSiteSearch::query(NodeId q, const std::vector<char>& enabled) {
    const Graph& g = *graph_;
    g.check_node(q);
    ++now_;
    heap_.clear();
    auto relax = [&](NodeId v, double d) {
        if (stamp_[v] != now_ || d < dist_[v]) {
            stamp_[v] = now_;
            dist_[v] = d;
            heap_.push_back({d, v});
            std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
        }
    };
    relax(q, 0.0);
    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
        auto [d, u] = heap_.back();
        heap_.pop_back();
        if (stamp_[u] != now_ || d != dist_[u]) continue;
        if (enabled[u]) return NNAnswer{u, d};
        for (const Arc& a : g.out(u)) relax(a.to, d + a.weight);
    }
    return std::nullopt;
}

}  // namespace sepnn
