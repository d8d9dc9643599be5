#include "sepnn/reactive_nn.hpp"

#include <algorithm>
#include <cassert>

namespace sepnn {

ReactiveNN::ReactiveNN(const Hierarchy& h, std::span<const NodeId> initial_sites)
    : hier_(&h), sites_(h.graph().node_count()) {
    // One position slice per (hierarchy node, separator); sized like the
    // distance tables.
    std::size_t slots = 0;
    for (std::uint32_t i = 0; i < hier_->graph_count(); ++i) {
        const Hierarchy::Node& node = hier_->node_at(i);
        slots += node.separator.size() * node.nodes.size();
    }
    pos_pool_.assign(slots, DeletableMinHeap::kAbsent);
    queues_.resize(hier_->graph_count());
    std::size_t offset = 0;
    for (std::uint32_t i = 0; i < hier_->graph_count(); ++i) {
        const Hierarchy::Node& node = hier_->node_at(i);
        const std::uint32_t k = static_cast<std::uint32_t>(node.nodes.size());
        queues_[i].resize(node.separator.size());
        for (std::size_t si = 0; si < node.separator.size(); ++si) {
            queues_[i][si].bind(pos_pool_.data() + offset, k);
            offset += k;
        }
    }
    reset(initial_sites);
}

void ReactiveNN::reset(std::span<const NodeId> sites) {
    for (auto& node_queues : queues_)
        for (DeletableMinHeap& q : node_queues) q.clear();
    SiteSet fresh(sites_.universe());
    for (NodeId p : sites) {
        hier_->graph().check_node(p);
        fresh.set(p, true);
    }
    sites_ = std::move(fresh);
    if (sites_.count() == 0) return;

    std::vector<std::uint32_t> enabled_locals;
    std::vector<DeletableMinHeap::Entry> entries;
    for (std::uint32_t i = 0; i < hier_->graph_count(); ++i) {
        const Hierarchy::Node& node = hier_->node_at(i);
        if (node.separator.empty()) continue;
        enabled_locals.clear();
        for (std::uint32_t local = 0; local < node.nodes.size(); ++local)
            if (sites_.enabled(node.nodes[local])) enabled_locals.push_back(local);
        if (enabled_locals.empty()) continue;
        for (std::size_t si = 0; si < node.separator.size(); ++si) {
            entries.clear();
            entries.reserve(enabled_locals.size());
            for (std::uint32_t local : enabled_locals)
                entries.push_back({node.from(si, local), local});
            queues_[i][si].assign(entries);
        }
    }
}

bool ReactiveNN::enable(NodeId p) {
    hier_->graph().check_node(p);
    if (sites_.enabled(p)) return false;
    const Hierarchy::Node* cur = &hier_->root();
    while (true) {
        std::uint32_t local = cur->local_of(p);
        for (std::size_t si = 0; si < cur->separator.size(); ++si)
            queues_[cur->index][si].insert(local, cur->from(si, local));
        if (cur->is_base) break;
        std::uint32_t ci = cur->child_of[local];
        if (ci == Hierarchy::kNoChild) break;
        cur = cur->children[ci].get();
    }
    sites_.set(p, true);
    return true;
}

bool ReactiveNN::disable(NodeId p) {
    hier_->graph().check_node(p);
    if (!sites_.enabled(p)) return false;
    const Hierarchy::Node* cur = &hier_->root();
    while (true) {
        std::uint32_t local = cur->local_of(p);
        for (std::size_t si = 0; si < cur->separator.size(); ++si) {
            bool removed = queues_[cur->index][si].erase(local);
            assert(removed);
            (void)removed;
        }
        if (cur->is_base) break;
        std::uint32_t ci = cur->child_of[local];
        if (ci == Hierarchy::kNoChild) break;
        cur = cur->children[ci].get();
    }
    sites_.set(p, false);
    return true;
}

void ReactiveNN::scan_separators(const Hierarchy::Node& node, std::uint32_t local,
                                 bool optimized, Candidate& best) const {
    const std::size_t sep_count = node.separator.size();
    if (sep_count == 0) return;
    const std::vector<DeletableMinHeap>& row = queues_[node.index];

    auto consider = [&](std::size_t si, double d_to_sep) {
        const DeletableMinHeap& q = row[si];
        if (q.empty()) return;
        const DeletableMinHeap::Entry& m = q.min();
        double cand = d_to_sep + m.key;
        if (cand == kInfDist) return;  // site unreachable through this separator
        NodeId site = node.nodes[m.item];
        if (cand < best.dist || (cand == best.dist && site < best.site)) best = {cand, site};
    };

    if (!optimized) {
        for (std::size_t si = 0; si < sep_count; ++si) consider(si, node.to(si, local));
        return;
    }
    for (std::uint32_t si : node.seps_by_distance(local)) {
        double d = node.to(si, local);
        if (d == kInfDist) break;  // the rest are unreachable too
        // Anything reached through a farther separator is at least d away;
        // equality must still be scanned so id tie-breaks stay exact.
        if (d > best.dist) break;
        consider(si, d);
    }
}

void ReactiveNN::base_case_search(const Hierarchy::Node& leaf, std::uint32_t local,
                                  Candidate& best) const {
    const Graph& sub = leaf.subgraph;
    // Plain Dijkstra inside the leaf, stopping at the first enabled site;
    // (distance, local id) settle order matches the global id tie-break.
    const std::uint32_t k = sub.node_count();
    thread_local std::vector<double> dist;
    thread_local std::vector<std::pair<double, std::uint32_t>> heap;
    dist.assign(k, kInfDist);
    heap.clear();
    dist[local] = 0.0;
    heap.push_back({0.0, local});
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), std::greater<>());
        auto [d, u] = heap.back();
        heap.pop_back();
        if (d != dist[u]) continue;
        NodeId global = leaf.nodes[u];
        if (sites_.enabled(global)) {
            if (d < best.dist || (d == best.dist && global < best.site)) best = {d, global};
            return;
        }
        for (const Arc& a : sub.out(u)) {
            double nd = d + a.weight;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                heap.push_back({nd, a.to});
                std::push_heap(heap.begin(), heap.end(), std::greater<>());
            }
        }
    }
}

std::optional<NNAnswer> ReactiveNN::nearest(NodeId q, bool optimized) const {
    hier_->graph().check_node(q);

    // Root-to-leaf chain of q, bounded by the hierarchy depth.
    struct Step {
        const Hierarchy::Node* node;
        std::uint32_t local;
    };
    constexpr std::size_t kMaxDepth = 96;
    Step chain[kMaxDepth];
    std::size_t depth = 0;
    const Hierarchy::Node* cur = &hier_->root();
    bool ends_at_base = false;
    while (true) {
        std::uint32_t local = cur->local_of(q);
        assert(depth < kMaxDepth);
        chain[depth++] = {cur, local};
        if (cur->is_base) {
            ends_at_base = true;
            break;
        }
        std::uint32_t ci = cur->child_of[local];
        if (ci == Hierarchy::kNoChild) break;  // q is a separator node here
        cur = cur->children[ci].get();
    }

    // Work bottom-up so the optimized scans start with the tightest bound:
    // the base-case candidate first, then the through-separator candidates
    // of each level above.
    Candidate best;
    for (std::size_t i = depth; i-- > 0;) {
        const Step& step = chain[i];
        if (ends_at_base && i == depth - 1)
            base_case_search(*step.node, step.local, best);
        else
            scan_separators(*step.node, step.local, optimized, best);
    }
    if (best.site == kNoNode) return std::nullopt;
    return NNAnswer{best.site, best.dist};
}

std::optional<NNAnswer> ReactiveNN::nearest_other(NodeId q) {
    hier_->graph().check_node(q);
    bool was_enabled = disable(q);
    std::optional<NNAnswer> ans = nearest(q);
    if (was_enabled) enable(q);
    return ans;
}

}  // namespace sepnn
