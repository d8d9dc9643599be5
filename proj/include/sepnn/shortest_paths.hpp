#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sepnn/graph.hpp"

namespace sepnn {

/// Single-source distances; unreachable nodes hold +infinity.
struct DistanceArray {
    NodeId source = kNoNode;
    std::vector<double> dist;

    bool reachable(NodeId v) const { return dist[v] != kInfDist; }
};

DistanceArray dijkstra(const Graph& g, NodeId source);
/// Paths may only use nodes in `restrict_to` (which must contain the source).
DistanceArray dijkstra(const Graph& g, NodeId source, std::span<const NodeId> restrict_to);

/// Distances *to* `source`, i.e. Dijkstra in the reverse graph. Identical to
/// dijkstra() on undirected graphs.
DistanceArray dijkstra_reverse(const Graph& g, NodeId source);
DistanceArray dijkstra_reverse(const Graph& g, NodeId source,
                               std::span<const NodeId> restrict_to);

struct NNAnswer {
    NodeId site = kNoNode;
    double dist = kInfDist;

    friend bool operator==(const NNAnswer&, const NNAnswer&) = default;
};

/// Nearest enabled site from q by growing a shortest-path ball until the
/// first site settles; ties go to the smallest site id. `enabled` is a
/// per-node membership table of size node_count.
std::optional<NNAnswer> nearest_by_dijkstra(const Graph& g, NodeId q,
                                            const std::vector<char>& enabled);
std::optional<NNAnswer> nearest_by_dijkstra(const Graph& g, NodeId q,
                                            std::span<const NodeId> sites);

/// Reusable nearest-site search over one graph. Results are identical to
/// nearest_by_dijkstra; state is version-stamped so repeated queries skip the
/// per-query O(n) reinitialization. Not safe for concurrent use.
class NearestSiteSearch {
public:
    explicit NearestSiteSearch(const Graph& g);
    std::optional<NNAnswer> query(NodeId q, const std::vector<char>& enabled);

private:
    const Graph* graph_;
    std::vector<double> dist_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t now_ = 0;
    std::vector<std::pair<double, NodeId>> heap_;
};

}  // namespace sepnn
