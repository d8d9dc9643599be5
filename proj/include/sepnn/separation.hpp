#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sepnn/graph.hpp"

namespace sepnn {

/// A balanced node separator of a (sub)graph: removing `separator` leaves the
/// `parts`, pairwise disconnected and each of size at most ceil(2n/3). Ids are
/// local to the graph the strategy was applied to. Both the separator and
/// every part are sorted ascending; parts are ordered by smallest member.
struct Separation {
    std::vector<NodeId> separator;
    std::vector<std::vector<NodeId>> parts;
};

/// A strategy failed on a graph shape it cannot handle (e.g. a cycle handed
/// to the centroid strategy). The hierarchy builder downgrades the affected
/// subgraph to a base case on this error.
class StrategyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SeparatorStrategy {
public:
    virtual ~SeparatorStrategy() = default;
    virtual Separation separate(const Graph& g) const = 0;
    virtual std::string_view name() const = 0;
};

/// Separator from the cheaper of the two axis-aligned median splits of the
/// node embedding: the nodes are ordered along an axis, cut into a low half L
/// of ceil(n/2) nodes and a high half R, and the separator is the set of
/// L-side endpoints of edges crossing the cut. Parts are the connected
/// components of the rest, one per component. Disconnected inputs whose
/// components are all small enough are returned as-is with an empty separator;
/// otherwise the split is applied to the largest component alone.
Separation median_line_separator(const Graph& g, std::span<const Coord> coords);

/// Single-node separator of a forest: the centroid of the largest tree (the
/// node minimizing the largest remaining component, ties to the smallest id).
/// Throws StrategyError when the input contains a cycle.
Separation centroid_separator(const Graph& g);

class MedianLineStrategy final : public SeparatorStrategy {
public:
    Separation separate(const Graph& g) const override;
    std::string_view name() const override { return "median"; }
};

class CentroidStrategy final : public SeparatorStrategy {
public:
    Separation separate(const Graph& g) const override { return centroid_separator(g); }
    std::string_view name() const override { return "centroid"; }
};

struct SeparationViolation {
    enum class Kind { Coverage, Overlap, CrossingEdge, Balance };
    Kind kind;
    std::string detail;
};

/// Empty iff `s` is a valid Separation of g; otherwise one entry per violation
/// found, each naming a witness.
std::vector<SeparationViolation> validate_separation(const Graph& g, const Separation& s);

/// ceil(2n/3), the part-size bound of a balanced separator.
inline NodeId balance_limit(NodeId n) { return (2 * n + 2) / 3; }

}  // namespace sepnn
