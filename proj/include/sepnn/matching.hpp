#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sepnn/graph.hpp"
#include "sepnn/reactive_nn.hpp"

namespace sepnn {

struct Matching {
    std::vector<std::pair<NodeId, NodeId>> pairs;  // each (smaller, larger)
    std::optional<NodeId> unmatched;               // present iff site count is odd
};

struct MatchingStats {
    std::size_t nn_calls = 0;
    std::size_t disable_calls = 0;
};

/// Greedy matching by nearest-neighbor chains: walk from a site to its
/// nearest other site until two sites are mutually nearest, match and disable
/// them, and continue from the remaining stack. With distances made distinct
/// by the id tie-break this produces the same matching as repeatedly removing
/// the closest pair, which is stable (no two sites prefer each other over
/// their partners). All sites must be enabled in r and mutually reachable;
/// an unreachable pair is reported before any mutation.
Matching greedy_stable_matching(ReactiveNN& r, std::span<const NodeId> sites,
                                MatchingStats* stats = nullptr);

/// Blocking pairs of m: site pairs (p, q), not matched together, with
/// d(p,q) < d(p, partner(p)) and d(p,q) < d(q, partner(q)); the partner
/// distance of an unmatched site is +infinity. Empty means m is stable.
/// Distances are all-pairs Dijkstra over the matched sites on g.
std::vector<std::pair<NodeId, NodeId>> verify_stability(const Graph& g, const Matching& m);

}  // namespace sepnn
