#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sepnn/graph.hpp"
#include "sepnn/separation.hpp"

namespace sepnn {

/// Thrown when a build would exceed the configured memory cap; carries the
/// estimate so callers can report it.
class MemoryCapError : public std::runtime_error {
public:
    MemoryCapError(std::uint64_t estimate, std::uint64_t cap);
    std::uint64_t estimate() const { return estimate_; }

private:
    std::uint64_t estimate_;
};

struct HierarchyStats {
    std::size_t total_nodes = 0;    // sum of |nodes| over all hierarchy graphs
    std::size_t graph_count = 0;    // number of hierarchy graphs
    std::size_t depth = 0;          // nodes on the longest root-to-leaf path
    std::size_t max_separator = 0;
    std::size_t base_leaves = 0;
};

/// Conservative byte estimate for the distance tables and sorted separator
/// lists of a hierarchy over n nodes, given bounds on separator size and
/// depth. Assumes separator sizes shrink geometrically with the level,
/// floored at one node per graph. Linear in n.
std::uint64_t memory_estimate(std::uint64_t n, std::uint64_t separator_bound,
                              std::uint64_t depth_bound);

/// Default bounds fed to the pre-build memory check.
std::uint64_t default_separator_bound(std::uint64_t n);
std::uint64_t default_depth_bound(std::uint64_t n);

/// Separator hierarchy of a graph: the recursive decomposition down to
/// subgraphs of at most base_case_size nodes, with all site-independent
/// precomputation attached to each internal node:
///   - dist_from[s][v]: distance from separator node s to v *within* the
///     node's subgraph (and dist_to for the reverse direction when the graph
///     is directed);
///   - sorted_seps[v]: the separator indices ordered by ascending distance
///     from v (query-side distance), used by the early-exit query scan.
/// Immutable after build; concurrent reads are unrestricted.
class Hierarchy {
public:
    static constexpr std::uint32_t kNoChild = 0xFFFFFFFF;
    static constexpr std::uint32_t kNoLocal = 0xFFFFFFFF;

    struct Node {
        std::vector<NodeId> nodes;      // global ids, ascending; local id = position
        std::vector<NodeId> separator;  // global ids, ascending
        std::vector<std::unique_ptr<Node>> children;
        std::vector<double> dist_from;          // |separator| x |nodes|, row-major
        std::vector<double> dist_to;            // directed graphs only
        std::vector<std::uint32_t> sorted_seps; // |nodes| x |separator|, row-major
        std::vector<std::uint32_t> child_of;    // per local id; kNoChild for separator nodes
        Graph subgraph;                 // induced adjacency, kept for leaves only
        std::uint32_t index = 0;        // dense preorder id across the hierarchy
        bool is_base = false;

        std::uint32_t local_of(NodeId global) const;
        double from(std::size_t sep_idx, std::uint32_t local) const {
            return dist_from[sep_idx * nodes.size() + local];
        }
        /// Distance from `local` to the separator node (equals from() when
        /// the graph is undirected).
        double to(std::size_t sep_idx, std::uint32_t local) const {
            return dist_to.empty() ? from(sep_idx, local)
                                   : dist_to[sep_idx * nodes.size() + local];
        }
        std::span<const std::uint32_t> seps_by_distance(std::uint32_t local) const {
            return {sorted_seps.data() + static_cast<std::size_t>(local) * separator.size(),
                    separator.size()};
        }
    };

    /// One step of the root-to-leaf chain of a node.
    struct Locus {
        const Node* node;
        std::uint32_t local;
    };

    Hierarchy() = default;

    /// Recursively separates g until subgraphs reach base_case_size. A
    /// StrategyError on a subgraph downgrades it to a base leaf. With a
    /// nonzero memory_cap_bytes, refuses up front (MemoryCapError) when the
    /// estimate exceeds the cap.
    static Hierarchy build(const Graph& g, const SeparatorStrategy& strategy,
                           std::uint32_t base_case_size, std::uint64_t memory_cap_bytes = 0);

    const Graph& graph() const { return graph_; }
    bool directed() const { return graph_.directed(); }
    std::uint32_t base_case_size() const { return base_case_size_; }
    const Node& root() const { return *root_; }
    std::size_t graph_count() const { return flat_.size(); }
    const Node& node_at(std::uint32_t index) const { return *flat_[index]; }

    /// Root-to-leaf chain of hierarchy nodes containing v, stopping at the
    /// first level where v is a separator node or at a base leaf.
    std::vector<Locus> locate(NodeId v) const;

    HierarchyStats stats() const;
    /// Live bytes held by distance tables and sorted separator lists.
    std::size_t table_bytes() const;

    void save(std::ostream& out) const;
    static Hierarchy load(std::istream& in);
    void save_file(const std::string& path) const;
    static Hierarchy load_file(const std::string& path);

private:
    Graph graph_;
    std::unique_ptr<Node> root_;
    std::vector<Node*> flat_;  // preorder, indexed by Node::index
    std::uint32_t base_case_size_ = 0;

    void reindex();
};

}  // namespace sepnn
