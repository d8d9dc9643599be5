#include "sepnn/separation.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace sepnn {

namespace {

// Undirected neighbor walk; for directed graphs both arc directions connect.
template <typename Fn>
void for_each_neighbor(const Graph& g, NodeId u, Fn&& fn) {
    for (const Arc& a : g.out(u)) fn(a.to);
    if (g.directed())
        for (const Arc& a : g.in(u)) fn(a.to);
}

// Connected components of the subset `nodes` with `removed` taken out,
// each sorted, ordered by smallest member.
std::vector<std::vector<NodeId>> components_without(const Graph& g,
                                                    std::span<const NodeId> nodes,
                                                    const std::vector<char>& removed) {
    std::vector<char> eligible(g.node_count(), 0);
    for (NodeId v : nodes) eligible[v] = !removed[v];
    std::vector<std::vector<NodeId>> parts;
    std::vector<NodeId> stack;
    for (NodeId start : nodes) {
        if (!eligible[start]) continue;
        std::vector<NodeId> part;
        stack.clear();
        stack.push_back(start);
        eligible[start] = 0;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            part.push_back(u);
            for_each_neighbor(g, u, [&](NodeId w) {
                if (eligible[w]) {
                    eligible[w] = 0;
                    stack.push_back(w);
                }
            });
        }
        std::sort(part.begin(), part.end());
        parts.push_back(std::move(part));
    }
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return parts;
}

// Median split of `subset` along one axis. Returns the crossing-endpoint
// separator; L is the first ceil(m/2) nodes ordered by (coordinate, id).
std::vector<NodeId> axis_separator(const Graph& g, std::span<const Coord> coords,
                                   std::span<const NodeId> subset, int axis,
                                   std::vector<char>& in_low /*scratch, sized n*/) {
    std::vector<NodeId> order(subset.begin(), subset.end());
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return coords[a][axis] != coords[b][axis] ? coords[a][axis] < coords[b][axis] : a < b;
    });
    const std::size_t low_count = (order.size() + 1) / 2;
    std::vector<char> in_subset(g.node_count(), 0);
    for (NodeId v : subset) in_subset[v] = 1;
    for (NodeId v : subset) in_low[v] = 0;
    for (std::size_t i = 0; i < low_count; ++i) in_low[order[i]] = 1;

    std::vector<NodeId> separator;
    for (std::size_t i = 0; i < low_count; ++i) {
        NodeId u = order[i];
        bool crossing = false;
        for_each_neighbor(g, u, [&](NodeId w) {
            if (in_subset[w] && !in_low[w]) crossing = true;
        });
        if (crossing) separator.push_back(u);
    }
    std::sort(separator.begin(), separator.end());
    return separator;
}

Separation split_subset(const Graph& g, std::span<const Coord> coords,
                        std::span<const NodeId> subset, NodeId limit) {
    std::vector<char> in_low(g.node_count(), 0);
    std::vector<NodeId> sep_x = axis_separator(g, coords, subset, 0, in_low);
    std::vector<NodeId> sep_y = axis_separator(g, coords, subset, 1, in_low);
    // Vertical (x) split wins ties.
    std::vector<NodeId>& separator = sep_y.size() < sep_x.size() ? sep_y : sep_x;

    std::vector<char> removed(g.node_count(), 0);
    for (NodeId v : separator) removed[v] = 1;
    std::vector<std::vector<NodeId>> parts = components_without(g, subset, removed);

    bool balanced = std::all_of(parts.begin(), parts.end(),
                                [&](const auto& p) { return p.size() <= limit; });
    if (balanced) return {std::move(separator), std::move(parts)};

    // Degenerate embedding: retreat to the whole low half as the separator.
    int axis = (&separator == &sep_y) ? 1 : 0;
    std::vector<NodeId> low_half;
    axis_separator(g, coords, subset, axis, in_low);  // recompute in_low for the chosen axis
    for (NodeId v : subset)
        if (in_low[v]) low_half.push_back(v);
    std::sort(low_half.begin(), low_half.end());
    std::fill(removed.begin(), removed.end(), 0);
    for (NodeId v : low_half) removed[v] = 1;
    parts = components_without(g, subset, removed);
    for (const auto& p : parts)
        if (p.size() > limit)
            throw StrategyError("median split cannot balance this embedding");
    return {std::move(low_half), std::move(parts)};
}

}  // namespace

Separation median_line_separator(const Graph& g, std::span<const Coord> coords) {
    const NodeId n = g.node_count();
    if (n < 2) throw std::invalid_argument("median_line_separator needs at least 2 nodes");
    if (coords.size() != n)
        throw std::invalid_argument("median_line_separator: coordinate table incomplete");

    const NodeId limit = balance_limit(n);
    std::vector<std::vector<NodeId>> comps = connected_components(g);
    if (comps.size() == 1) {
        return split_subset(g, coords, comps[0], limit);
    }
    std::size_t largest = 0;
    for (std::size_t i = 1; i < comps.size(); ++i)
        if (comps[i].size() > comps[largest].size()) largest = i;
    if (comps[largest].size() <= limit) {
        // Already disconnected into small enough pieces; no separator needed.
        return {{}, std::move(comps)};
    }
    // Only the oversized component needs splitting; the rest pass through.
    Separation s = split_subset(g, coords, comps[largest], limit);
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (i != largest) s.parts.push_back(std::move(comps[i]));
    std::sort(s.parts.begin(), s.parts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return s;
}

Separation MedianLineStrategy::separate(const Graph& g) const {
    if (!g.has_coords())
        throw std::invalid_argument("median strategy requires node coordinates");
    return median_line_separator(g, g.coords());
}

Separation centroid_separator(const Graph& g) {
    const NodeId n = g.node_count();
    if (n == 0) return {};
    std::vector<std::vector<NodeId>> comps = connected_components(g);

    // Forest check: a connected component with as many edges as nodes has a cycle.
    for (const auto& comp : comps) {
        std::size_t degree_sum = 0;
        for (NodeId v : comp) {
            degree_sum += g.out(v).size();
            if (g.directed()) degree_sum += g.in(v).size();
        }
        if (degree_sum / 2 >= comp.size())
            throw StrategyError("centroid strategy requires a forest; cycle through node " +
                                std::to_string(comp.front()));
    }

    std::size_t largest = 0;
    for (std::size_t i = 1; i < comps.size(); ++i)
        if (comps[i].size() > comps[largest].size()) largest = i;
    const std::vector<NodeId>& tree = comps[largest];
    const std::size_t m = tree.size();

    // Subtree sizes from an iterative rooted traversal.
    std::vector<NodeId> parent(g.node_count(), kNoNode);
    std::vector<NodeId> dfs_order;
    dfs_order.reserve(m);
    std::vector<NodeId> stack{tree.front()};
    std::vector<char> visited(g.node_count(), 0);
    visited[tree.front()] = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        dfs_order.push_back(u);
        for_each_neighbor(g, u, [&](NodeId w) {
            if (!visited[w]) {
                visited[w] = 1;
                parent[w] = u;
                stack.push_back(w);
            }
        });
    }
    std::vector<std::size_t> subtree(g.node_count(), 1);
    for (auto it = dfs_order.rbegin(); it != dfs_order.rend(); ++it)
        if (parent[*it] != kNoNode) subtree[parent[*it]] += subtree[*it];

    NodeId centroid = kNoNode;
    std::size_t best_worst = m + 1;
    for (NodeId u : dfs_order) {
        std::size_t worst = m - subtree[u];  // the component holding the parent
        for_each_neighbor(g, u, [&](NodeId w) {
            if (parent[w] == u) worst = std::max(worst, subtree[w]);
        });
        if (worst < best_worst || (worst == best_worst && u < centroid)) {
            best_worst = worst;
            centroid = u;
        }
    }

    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::vector<char> removed(n, 0);
    removed[centroid] = 1;
    return {{centroid}, components_without(g, all, removed)};
}

std::vector<SeparationViolation> validate_separation(const Graph& g, const Separation& s) {
    using Kind = SeparationViolation::Kind;
    std::vector<SeparationViolation> out;
    const NodeId n = g.node_count();

    constexpr std::uint32_t kUnassigned = 0xFFFFFFFF;
    constexpr std::uint32_t kSeparator = 0xFFFFFFFE;
    std::vector<std::uint32_t> owner(n, kUnassigned);
    std::vector<char> duplicated(n, 0);
    auto claim = [&](NodeId v, std::uint32_t who) {
        if (v >= n) {
            out.push_back({Kind::Coverage, "id " + std::to_string(v) + " is not a node"});
            return;
        }
        if (owner[v] != kUnassigned && !duplicated[v]) {
            duplicated[v] = 1;
            out.push_back({Kind::Overlap, "node " + std::to_string(v) +
                                              " appears in more than one set"});
        }
        owner[v] = who;
    };
    for (NodeId v : s.separator) claim(v, kSeparator);
    for (std::size_t i = 0; i < s.parts.size(); ++i)
        for (NodeId v : s.parts[i]) claim(v, static_cast<std::uint32_t>(i));
    for (NodeId v = 0; v < n; ++v)
        if (owner[v] == kUnassigned)
            out.push_back({Kind::Coverage, "node " + std::to_string(v) + " is uncovered"});

    for (NodeId u = 0; u < n; ++u) {
        if (owner[u] >= kSeparator) continue;
        for (const Arc& a : g.out(u)) {
            if (!g.directed() && a.to < u) continue;  // report each edge once
            if (owner[a.to] < kSeparator && owner[a.to] != owner[u])
                out.push_back({Kind::CrossingEdge,
                               "edge " + std::to_string(u) + "-" + std::to_string(a.to) +
                                   " joins part " + std::to_string(owner[u]) + " and part " +
                                   std::to_string(owner[a.to])});
        }
    }

    const NodeId limit = balance_limit(n);
    for (std::size_t i = 0; i < s.parts.size(); ++i)
        if (s.parts[i].size() > limit)
            out.push_back({Kind::Balance, "part " + std::to_string(i) + " has " +
                                              std::to_string(s.parts[i].size()) +
                                              " nodes, limit " + std::to_string(limit)});
    return out;
}

}  // namespace sepnn
