#include "sepnn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sepnn {

Graph::Graph(NodeId node_count, bool directed)
    : node_count_(node_count), directed_(directed), out_(node_count) {
    if (directed_) in_.resize(node_count_);
}

void Graph::check_node(NodeId v) const {
    if (v >= node_count_)
        throw std::out_of_range("node id " + std::to_string(v) + " out of range (n=" +
                                std::to_string(node_count_) + ")");
}

void Graph::add_edge(NodeId u, NodeId v, double weight) {
    check_node(u);
    check_node(v);
    if (!(weight >= 0.0) || !std::isfinite(weight))
        throw std::invalid_argument("edge weight must be nonnegative and finite");
    out_[u].push_back({v, weight});
    if (directed_) {
        in_[v].push_back({u, weight});
    } else if (u != v) {
        out_[v].push_back({u, weight});
    }
    ++edge_count_;
}

void Graph::set_coords(std::vector<Coord> coords) {
    if (coords.size() != node_count_)
        throw std::invalid_argument("coordinate table size does not match node count");
    coords_ = std::move(coords);
}

Graph Graph::induced(std::span<const NodeId> nodes) const {
    Graph sub(static_cast<NodeId>(nodes.size()), directed_);
    std::vector<NodeId> local(node_count_, kNoNode);
    for (NodeId i = 0; i < nodes.size(); ++i) {
        check_node(nodes[i]);
        local[nodes[i]] = i;
    }
    for (NodeId i = 0; i < nodes.size(); ++i) {
        for (const Arc& a : out_[nodes[i]]) {
            NodeId j = local[a.to];
            if (j == kNoNode) continue;
            sub.out_[i].push_back({j, a.weight});
            if (directed_) sub.in_[j].push_back({i, a.weight});
            // Count undirected edges once; both endpoint lists are visited.
            if (directed_ || nodes[i] <= a.to) ++sub.edge_count_;
        }
    }
    if (has_coords()) {
        std::vector<Coord> c(nodes.size());
        for (NodeId i = 0; i < nodes.size(); ++i) c[i] = coords_[nodes[i]];
        sub.coords_ = std::move(c);
    }
    return sub;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
    const NodeId n = g.node_count();
    std::vector<std::vector<NodeId>> comps;
    std::vector<char> seen(n, 0);
    std::vector<NodeId> queue;
    for (NodeId start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<NodeId> comp;
        queue.clear();
        queue.push_back(start);
        seen[start] = 1;
        while (!queue.empty()) {
            NodeId u = queue.back();
            queue.pop_back();
            comp.push_back(u);
            for (const Arc& a : g.out(u))
                if (!seen[a.to]) {
                    seen[a.to] = 1;
                    queue.push_back(a.to);
                }
            if (g.directed())
                for (const Arc& a : g.in(u))
                    if (!seen[a.to]) {
                        seen[a.to] = 1;
                        queue.push_back(a.to);
                    }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

ComponentSplit largest_connected_component(const Graph& g) {
    if (g.directed())
        throw std::invalid_argument("largest_connected_component requires an undirected graph");
    std::vector<std::vector<NodeId>> comps = connected_components(g);
    if (comps.empty()) return {Graph(0, false), {}};
    // Components are ordered by smallest contained id, so the first of the
    // largest ones wins the tie.
    std::size_t best = 0;
    for (std::size_t i = 1; i < comps.size(); ++i)
        if (comps[i].size() > comps[best].size()) best = i;
    ComponentSplit result;
    result.original_ids = std::move(comps[best]);
    result.graph = g.induced(result.original_ids);
    return result;
}

}  // namespace sepnn
