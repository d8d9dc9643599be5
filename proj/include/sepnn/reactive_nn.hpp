#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sepnn/deletable_heap.hpp"
#include "sepnn/hierarchy.hpp"
#include "sepnn/shortest_paths.hpp"

namespace sepnn {

/// Membership bitmap over the node universe.
class SiteSet {
public:
    SiteSet() = default;
    explicit SiteSet(NodeId universe) : flags_(universe, 0) {}

    bool enabled(NodeId v) const { return flags_[v] != 0; }
    std::size_t count() const { return count_; }
    NodeId universe() const { return static_cast<NodeId>(flags_.size()); }
    const std::vector<char>& flags() const { return flags_; }

    /// Returns whether membership actually changed.
    bool set(NodeId v, bool on) {
        if (static_cast<bool>(flags_[v]) == on) return false;
        flags_[v] = on ? 1 : 0;
        count_ += on ? 1 : -1;
        return true;
    }

    std::vector<NodeId> to_vector() const {
        std::vector<NodeId> out;
        out.reserve(count_);
        for (NodeId v = 0; v < flags_.size(); ++v)
            if (flags_[v]) out.push_back(v);
        return out;
    }

private:
    std::vector<char> flags_;
    std::size_t count_ = 0;
};

/// Reactive nearest-neighbor structure over a built Hierarchy: a site
/// membership bitmap plus one deletable priority queue per separator node per
/// hierarchy level. The queue of separator s holds the enabled sites of its
/// subgraph keyed by distance from s, so a query combines, per level, the
/// best "through a separator" candidate with the recursive candidate inside
/// the query node's part.
///
/// The hierarchy must outlive this structure. Queries are const and safe to
/// run concurrently; enable/disable/nearest_other are writers and need
/// exclusive access.
class ReactiveNN {
public:
    explicit ReactiveNN(const Hierarchy& h, std::span<const NodeId> initial_sites = {});

    const Hierarchy& hierarchy() const { return *hier_; }
    const SiteSet& sites() const { return sites_; }

    /// Replaces the site set wholesale (bulk queue rebuild).
    void reset(std::span<const NodeId> sites);

    /// Adds p as a site, inserting it into the queue of every separator node
    /// on its hierarchy chain (unreachable entries get key +infinity). False
    /// if p was already enabled.
    bool enable(NodeId p);
    /// Inverse of enable; false if p was not a site.
    bool disable(NodeId p);

    /// Nearest enabled site to q, ties to the smallest site id; nullopt when
    /// no site is reachable. With `optimized`, separators are scanned in
    /// ascending d(q, s) order and the scan stops once d(q, s) exceeds the
    /// best distance found.
    std::optional<NNAnswer> nearest(NodeId q, bool optimized = true) const;

    /// Nearest enabled site excluding q itself; observationally side-effect
    /// free, but counts as a writer.
    std::optional<NNAnswer> nearest_other(NodeId q);

    /// Queue storage of one separator (test hook; heap order, not sorted).
    std::span<const DeletableMinHeap::Entry> queue_entries(std::uint32_t node_index,
                                                           std::size_t sep_idx) const {
        return queues_[node_index][sep_idx].entries();
    }

private:
    struct Candidate {
        double dist = kInfDist;
        NodeId site = kNoNode;
    };

    void scan_separators(const Hierarchy::Node& node, std::uint32_t local, bool optimized,
                         Candidate& best) const;
    void base_case_search(const Hierarchy::Node& leaf, std::uint32_t local,
                          Candidate& best) const;

    const Hierarchy* hier_;
    SiteSet sites_;
    std::vector<std::uint32_t> pos_pool_;
    std::vector<std::vector<DeletableMinHeap>> queues_;  // [node index][separator index]
};

}  // namespace sepnn
