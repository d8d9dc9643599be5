#include "sepnn/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "sepnn/shortest_paths.hpp"

namespace sepnn {

MemoryCapError::MemoryCapError(std::uint64_t estimate, std::uint64_t cap)
    : std::runtime_error("estimated table memory " + std::to_string(estimate) +
                         " bytes exceeds cap of " + std::to_string(cap) + " bytes"),
      estimate_(estimate) {}

std::uint64_t memory_estimate(std::uint64_t n, std::uint64_t separator_bound,
                              std::uint64_t depth_bound) {
    if (n == 0 || separator_bound == 0 || depth_bound == 0)
        throw std::invalid_argument("memory_estimate arguments must be positive");
    constexpr double kBytesPerEntry = sizeof(double) + sizeof(std::uint32_t);
    double entries = 0.0;
    for (std::uint64_t level = 0; level < depth_bound; ++level) {
        double sep = static_cast<double>(separator_bound) *
                     std::pow(2.0 / 3.0, static_cast<double>(level) / 2.0);
        entries += static_cast<double>(n) * std::max(1.0, sep);
    }
    return static_cast<std::uint64_t>(entries * kBytesPerEntry);
}

std::uint64_t default_separator_bound(std::uint64_t n) {
    return static_cast<std::uint64_t>(std::ceil(3.0 * std::sqrt(static_cast<double>(n)))) + 1;
}

std::uint64_t default_depth_bound(std::uint64_t n) {
    double levels = std::ceil(std::log(static_cast<double>(std::max<std::uint64_t>(n, 2))) /
                              std::log(1.5));
    return static_cast<std::uint64_t>(levels) + 1;
}

std::uint32_t Hierarchy::Node::local_of(NodeId global) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), global);
    if (it == nodes.end() || *it != global) return kNoLocal;
    return static_cast<std::uint32_t>(it - nodes.begin());
}

namespace {

struct Builder {
    const SeparatorStrategy* strategy;
    std::uint32_t base_case_size;
    bool directed;

    std::unique_ptr<Hierarchy::Node> run(Graph sub, std::vector<NodeId> globals) {
        auto node = std::make_unique<Hierarchy::Node>();
        const std::uint32_t k = sub.node_count();
        node->nodes = std::move(globals);

        Separation sep;
        bool degenerate = false;
        if (k <= base_case_size) {
            degenerate = true;
        } else {
            try {
                sep = strategy->separate(sub);
            } catch (const StrategyError&) {
                degenerate = true;  // unseparable shape; fall back to direct search
            }
        }
        if (degenerate) {
            node->is_base = true;
            node->subgraph = std::move(sub);
            return node;
        }

        // Local separator ids are ascending, so the global list stays sorted.
        node->separator.reserve(sep.separator.size());
        for (NodeId local : sep.separator) node->separator.push_back(node->nodes[local]);

        node->child_of.assign(k, Hierarchy::kNoChild);
        for (std::size_t pi = 0; pi < sep.parts.size(); ++pi)
            for (NodeId local : sep.parts[pi])
                node->child_of[local] = static_cast<std::uint32_t>(pi);

        const std::size_t sep_count = sep.separator.size();
        node->dist_from.resize(sep_count * k);
        if (directed) node->dist_to.resize(sep_count * k);
        for (std::size_t si = 0; si < sep_count; ++si) {
            DistanceArray da = dijkstra(sub, sep.separator[si]);
            std::copy(da.dist.begin(), da.dist.end(), node->dist_from.begin() + si * k);
            if (directed) {
                DistanceArray rv = dijkstra_reverse(sub, sep.separator[si]);
                std::copy(rv.dist.begin(), rv.dist.end(), node->dist_to.begin() + si * k);
            }
        }

        // Query-side scan order: ascending d(v, s), separator index on ties.
        node->sorted_seps.resize(static_cast<std::size_t>(k) * sep_count);
        const std::vector<double>& scan_key = directed ? node->dist_to : node->dist_from;
        for (std::uint32_t v = 0; v < k; ++v) {
            std::uint32_t* row = node->sorted_seps.data() + static_cast<std::size_t>(v) * sep_count;
            std::iota(row, row + sep_count, 0u);
            std::sort(row, row + sep_count, [&](std::uint32_t a, std::uint32_t b) {
                double da = scan_key[a * k + v], db = scan_key[b * k + v];
                return da != db ? da < db : a < b;
            });
        }

        node->children.reserve(sep.parts.size());
        for (const std::vector<NodeId>& part : sep.parts) {
            std::vector<NodeId> part_globals;
            part_globals.reserve(part.size());
            for (NodeId local : part) part_globals.push_back(node->nodes[local]);
            node->children.push_back(run(sub.induced(part), std::move(part_globals)));
        }
        return node;
    }
};

void collect_preorder(Hierarchy::Node* node, std::vector<Hierarchy::Node*>& flat) {
    node->index = static_cast<std::uint32_t>(flat.size());
    flat.push_back(node);
    for (auto& child : node->children) collect_preorder(child.get(), flat);
}

}  // namespace

void Hierarchy::reindex() {
    flat_.clear();
    collect_preorder(root_.get(), flat_);
}

Hierarchy Hierarchy::build(const Graph& g, const SeparatorStrategy& strategy,
                           std::uint32_t base_case_size, std::uint64_t memory_cap_bytes) {
    if (base_case_size < 1) throw std::invalid_argument("base_case_size must be at least 1");
    if (g.node_count() == 0) throw std::invalid_argument("cannot build on an empty graph");
    if (memory_cap_bytes) {
        std::uint64_t estimate = memory_estimate(g.node_count(),
                                                 default_separator_bound(g.node_count()),
                                                 default_depth_bound(g.node_count()));
        if (estimate > memory_cap_bytes) throw MemoryCapError(estimate, memory_cap_bytes);
    }

    Hierarchy h;
    h.graph_ = g;
    h.base_case_size_ = base_case_size;
    Builder builder{&strategy, base_case_size, g.directed()};
    std::vector<NodeId> all(g.node_count());
    std::iota(all.begin(), all.end(), 0u);
    h.root_ = builder.run(g, std::move(all));
    h.reindex();
    return h;
}

std::vector<Hierarchy::Locus> Hierarchy::locate(NodeId v) const {
    graph_.check_node(v);
    std::vector<Locus> chain;
    const Node* cur = root_.get();
    while (true) {
        std::uint32_t local = cur->local_of(v);
        chain.push_back({cur, local});
        if (cur->is_base) break;
        std::uint32_t ci = cur->child_of[local];
        if (ci == kNoChild) break;  // v is a separator node here
        cur = cur->children[ci].get();
    }
    return chain;
}

HierarchyStats Hierarchy::stats() const {
    HierarchyStats st;
    st.graph_count = flat_.size();
    struct Frame {
        const Node* node;
        std::size_t depth;
    };
    std::vector<Frame> stack{{root_.get(), 1}};
    while (!stack.empty()) {
        auto [node, depth] = stack.back();
        stack.pop_back();
        st.total_nodes += node->nodes.size();
        st.depth = std::max(st.depth, depth);
        st.max_separator = std::max(st.max_separator, node->separator.size());
        if (node->is_base) ++st.base_leaves;
        for (const auto& child : node->children) stack.push_back({child.get(), depth + 1});
    }
    return st;
}

std::size_t Hierarchy::table_bytes() const {
    std::size_t bytes = 0;
    for (const Node* node : flat_)
        bytes += node->dist_from.size() * sizeof(double) +
                 node->dist_to.size() * sizeof(double) +
                 node->sorted_seps.size() * sizeof(std::uint32_t);
    return bytes;
}

// ---------------------------------------------------------------------------
// Serialization: versioned header, graph, then preorder node records.
// Round-trip stable; host endianness.

namespace {

constexpr char kMagic[8] = {'S', 'E', 'P', 'N', 'N', 'H', 'I', 'R'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw std::runtime_error("truncated hierarchy file");
    return value;
}

template <typename T>
void put_vec(std::ostream& out, const std::vector<T>& v) {
    put<std::uint64_t>(out, v.size());
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
std::vector<T> get_vec(std::istream& in) {
    std::uint64_t size = get<std::uint64_t>(in);
    std::vector<T> v(size);
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(size * sizeof(T)));
    if (!in) throw std::runtime_error("truncated hierarchy file");
    return v;
}

void save_node(std::ostream& out, const Hierarchy::Node& node) {
    put_vec(out, node.nodes);
    put_vec(out, node.separator);
    put<std::uint8_t>(out, node.is_base ? 1 : 0);
    put_vec(out, node.dist_from);
    put_vec(out, node.dist_to);
    put_vec(out, node.sorted_seps);
    put_vec(out, node.child_of);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(node.children.size()));
    for (const auto& child : node.children) save_node(out, *child);
}

std::unique_ptr<Hierarchy::Node> load_node(std::istream& in, const Graph& graph) {
    auto node = std::make_unique<Hierarchy::Node>();
    node->nodes = get_vec<NodeId>(in);
    node->separator = get_vec<NodeId>(in);
    node->is_base = get<std::uint8_t>(in) != 0;
    node->dist_from = get_vec<double>(in);
    node->dist_to = get_vec<double>(in);
    node->sorted_seps = get_vec<std::uint32_t>(in);
    node->child_of = get_vec<std::uint32_t>(in);
    std::uint32_t child_count = get<std::uint32_t>(in);
    for (std::uint32_t i = 0; i < child_count; ++i)
        node->children.push_back(load_node(in, graph));
    if (node->is_base) node->subgraph = graph.induced(node->nodes);
    return node;
}

}  // namespace

void Hierarchy::save(std::ostream& out) const {
    out.write(kMagic, sizeof(kMagic));
    put<std::uint32_t>(out, kVersion);
    put<std::uint8_t>(out, graph_.directed() ? 1 : 0);
    put<std::uint32_t>(out, base_case_size_);
    put<NodeId>(out, graph_.node_count());
    // Arcs; undirected edges once each.
    std::uint64_t arc_count = 0;
    for (NodeId u = 0; u < graph_.node_count(); ++u)
        for (const Arc& a : graph_.out(u))
            if (graph_.directed() || u <= a.to) ++arc_count;
    put<std::uint64_t>(out, arc_count);
    for (NodeId u = 0; u < graph_.node_count(); ++u)
        for (const Arc& a : graph_.out(u)) {
            if (!graph_.directed() && u > a.to) continue;
            put<NodeId>(out, u);
            put<NodeId>(out, a.to);
            put<double>(out, a.weight);
        }
    put<std::uint8_t>(out, graph_.has_coords() ? 1 : 0);
    if (graph_.has_coords())
        for (const Coord& c : graph_.coords()) {
            put<double>(out, c[0]);
            put<double>(out, c[1]);
        }
    save_node(out, *root_);
    if (!out) throw std::runtime_error("failed writing hierarchy");
}

Hierarchy Hierarchy::load(std::istream& in) {
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || !std::equal(magic, magic + 8, kMagic))
        throw std::runtime_error("not a hierarchy file (bad magic)");
    std::uint32_t version = get<std::uint32_t>(in);
    if (version != kVersion)
        throw std::runtime_error("unsupported hierarchy version " + std::to_string(version));
    bool directed = get<std::uint8_t>(in) != 0;
    Hierarchy h;
    h.base_case_size_ = get<std::uint32_t>(in);
    NodeId n = get<NodeId>(in);
    Graph g(n, directed);
    std::uint64_t arc_count = get<std::uint64_t>(in);
    for (std::uint64_t i = 0; i < arc_count; ++i) {
        NodeId u = get<NodeId>(in);
        NodeId v = get<NodeId>(in);
        double w = get<double>(in);
        g.add_edge(u, v, w);
    }
    if (get<std::uint8_t>(in)) {
        std::vector<Coord> coords(n);
        for (NodeId v = 0; v < n; ++v) {
            coords[v][0] = get<double>(in);
            coords[v][1] = get<double>(in);
        }
        g.set_coords(std::move(coords));
    }
    h.graph_ = std::move(g);
    h.root_ = load_node(in, h.graph_);
    h.reindex();
    return h;
}

void Hierarchy::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    save(out);
}

Hierarchy Hierarchy::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load(in);
}

}  // namespace sepnn
