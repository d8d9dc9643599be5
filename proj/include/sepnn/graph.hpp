#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace sepnn {

using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr double kInfDist = std::numeric_limits<double>::infinity();

struct Arc {
    NodeId to;
    double weight;
};

/// (x, y) embedding of a node, when the input provides one.
using Coord = std::array<double, 2>;

/// Weighted graph over dense node ids 0..n-1 with nonnegative finite edge
/// weights. Undirected graphs keep symmetric adjacency; directed graphs
/// additionally keep reverse adjacency so searches in the reverse graph
/// need no rebuilding. Instances are treated as immutable once populated,
/// which makes concurrent reads safe.
class Graph {
public:
    Graph() = default;
    Graph(NodeId node_count, bool directed);

    NodeId node_count() const { return node_count_; }
    /// Undirected edges, or arcs when directed.
    std::size_t edge_count() const { return edge_count_; }
    bool directed() const { return directed_; }

    /// Adds edge u-v (or arc u->v when directed). Throws std::invalid_argument
    /// on a negative or non-finite weight, std::out_of_range on a bad id.
    void add_edge(NodeId u, NodeId v, double weight);

    std::span<const Arc> out(NodeId u) const { return out_[u]; }
    std::span<const Arc> in(NodeId u) const {
        return directed_ ? std::span<const Arc>(in_[u]) : std::span<const Arc>(out_[u]);
    }

    bool has_coords() const { return !coords_.empty(); }
    const std::vector<Coord>& coords() const { return coords_; }
    void set_coords(std::vector<Coord> coords);

    /// Induced subgraph on `nodes`; the new id of nodes[i] is i. Coordinates,
    /// if present, are carried over. `nodes` must hold distinct valid ids.
    Graph induced(std::span<const NodeId> nodes) const;

    /// Throws std::out_of_range when v is not a node of this graph.
    void check_node(NodeId v) const;

private:
    NodeId node_count_ = 0;
    bool directed_ = false;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<Arc>> out_;
    std::vector<std::vector<Arc>> in_;  // populated only when directed
    std::vector<Coord> coords_;         // empty when no embedding is known
};

/// Connected components (weak components when directed), each sorted
/// ascending, ordered by smallest contained id.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

struct ComponentSplit {
    Graph graph;
    std::vector<NodeId> original_ids;  // new id -> id in the input graph
};

/// Induced subgraph on the largest connected component of an undirected
/// graph; ties go to the component containing the smallest original id.
ComponentSplit largest_connected_component(const Graph& g);

}  // namespace sepnn
