#include "sepnn/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sepnn/dimacs.hpp"
#include "sepnn/hierarchy.hpp"
#include "sepnn/matching.hpp"
#include "sepnn/reactive_nn.hpp"
#include "sepnn/workload.hpp"

namespace sepnn {

namespace {

bool is_hierarchy_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    char magic[8] = {};
    in.read(magic, sizeof(magic));
    return in && std::string_view(magic, 8) == "SEPNNHIR";
}

std::unique_ptr<SeparatorStrategy> make_strategy(const std::string& name) {
    if (name == "median") return std::make_unique<MedianLineStrategy>();
    if (name == "centroid") return std::make_unique<CentroidStrategy>();
    throw std::invalid_argument("unknown strategy '" + name + "' (median|centroid)");
}

struct Network {
    Graph graph;
    std::optional<Hierarchy> hierarchy;
};

// Loads `<gr> <co|hier>`: with a .co second argument the graph is the largest
// connected component of the parsed network; with a hierarchy file the graph
// comes from the file and the .gr is cross-checked against it.
Network load_network(const std::string& gr_path, const std::string& second) {
    Network net;
    if (is_hierarchy_file(second)) {
        net.hierarchy = Hierarchy::load_file(second);
        net.graph = net.hierarchy->graph();
        Graph parsed = parse_dimacs(read_text_file(gr_path));
        ComponentSplit lcc = largest_connected_component(parsed);
        if (lcc.graph.node_count() != net.graph.node_count() ||
            lcc.graph.edge_count() != net.graph.edge_count())
            throw std::runtime_error("hierarchy file does not match " + gr_path +
                                     " (node/edge counts differ)");
    } else {
        Graph parsed = load_dimacs(gr_path, second);
        ComponentSplit lcc = largest_connected_component(parsed);
        net.graph = std::move(lcc.graph);
    }
    return net;
}

std::vector<std::uint32_t> parse_counts(const std::string& csv) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    if (out.empty()) throw std::invalid_argument("empty count list");
    return out;
}

int cmd_build(const std::string& gr, const std::string& co, const std::string& out_path,
              std::uint32_t base_case, const std::string& strategy_name,
              std::uint64_t mem_cap) {
    Graph parsed = load_dimacs(gr, co);
    ComponentSplit lcc = largest_connected_component(parsed);
    std::cout << "largest component: " << lcc.graph.node_count() << " nodes, "
              << lcc.graph.edge_count() << " edges\n";
    std::uint64_t estimate =
        memory_estimate(lcc.graph.node_count(), default_separator_bound(lcc.graph.node_count()),
                        default_depth_bound(lcc.graph.node_count()));
    std::cout << "estimated table memory: " << estimate << " bytes\n";

    auto strategy = make_strategy(strategy_name);
    auto t0 = std::chrono::steady_clock::now();
    Hierarchy h = Hierarchy::build(lcc.graph, *strategy, base_case, mem_cap);
    auto t1 = std::chrono::steady_clock::now();
    HierarchyStats st = h.stats();
    std::cout << "built in " << std::chrono::duration<double>(t1 - t0).count() << " s: "
              << st.total_nodes << " nodes across " << st.graph_count << " graphs, depth "
              << st.depth << ", max separator " << st.max_separator << ", tables "
              << h.table_bytes() << " bytes\n";
    h.save_file(out_path);
    std::cout << "saved to " << out_path << "\n";
    return 0;
}

int cmd_stats(const std::string& hier_path) {
    Hierarchy h = Hierarchy::load_file(hier_path);
    HierarchyStats st = h.stats();
    std::cout << "graph: " << h.graph().node_count() << " nodes, " << h.graph().edge_count()
              << (h.directed() ? " arcs (directed)\n" : " edges\n");
    std::cout << "hierarchy nodes: " << st.total_nodes << " across " << st.graph_count
              << " graphs\n";
    std::cout << "depth: " << st.depth << "\n";
    std::cout << "max separator: " << st.max_separator << "\n";
    std::cout << "base leaves: " << st.base_leaves << " (base case size "
              << h.base_case_size() << ")\n";
    std::cout << "table bytes: " << h.table_bytes() << "\n";
    return 0;
}

int cmd_bench(const std::string& gr, const std::string& second, const WorkloadSpec& spec,
              const std::string& engines_csv, const std::string& csv_path) {
    Network net = load_network(gr, second);
    std::vector<Engine> engines;
    {
        std::stringstream ss(engines_csv);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) engines.push_back(parse_engine(item));
    }
    WorkloadSpec capped = spec;
    std::size_t before = capped.site_counts.size();
    std::erase_if(capped.site_counts,
                  [&](std::uint32_t c) { return c > net.graph.node_count(); });
    if (capped.site_counts.empty())
        throw std::invalid_argument("all site counts exceed the graph size");
    if (capped.site_counts.size() != before)
        std::cerr << "note: dropped " << before - capped.site_counts.size()
                  << " site count(s) larger than the graph\n";

    WorkloadReport report = run_benchmark(
        net.graph, net.hierarchy ? &*net.hierarchy : nullptr, capped, engines);

    // Engines must agree on every query answer of a row group.
    for (std::size_t i = 0; i < report.rows.size(); ++i)
        for (std::size_t j = i + 1; j < report.rows.size(); ++j)
            if (report.rows[i].site_count == report.rows[j].site_count &&
                report.rows[i].checksum != report.rows[j].checksum)
                std::cerr << "warning: engines disagree at " << report.rows[i].site_count
                          << " sites\n";

    std::string csv = report_to_csv(report);
    if (csv_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot open " + csv_path + " for writing");
        out << csv;
        std::cout << "wrote " << report.rows.size() << " rows to " << csv_path << "\n";
    }
    return 0;
}

int cmd_match(const std::string& gr, const std::string& second, std::uint32_t site_count,
              std::uint64_t seed, std::uint32_t base_case, const std::string& strategy_name) {
    Network net = load_network(gr, second);
    if (!net.hierarchy) {
        auto strategy = make_strategy(strategy_name);
        std::cerr << "building hierarchy (pass a hierarchy file to skip this)\n";
        net.hierarchy = Hierarchy::build(net.graph, *strategy, base_case);
    }
    if (site_count > net.graph.node_count())
        throw std::invalid_argument("site count exceeds graph size");
    Rng rng(mix_seed(seed, site_count, 0));
    std::vector<NodeId> sites = rng.distinct(net.graph.node_count(), site_count);

    ReactiveNN reactive(*net.hierarchy, sites);
    MatchingStats stats;
    auto t0 = std::chrono::steady_clock::now();
    Matching m = greedy_stable_matching(reactive, sites, &stats);
    auto t1 = std::chrono::steady_clock::now();
    std::cout << "matched " << m.pairs.size() << " pairs"
              << (m.unmatched ? " (one site unmatched)" : "") << " in "
              << std::chrono::duration<double, std::milli>(t1 - t0).count() << " ms, "
              << stats.nn_calls << " nearest-neighbor calls\n";

    auto blocking = verify_stability(net.graph, m);
    if (blocking.empty()) {
        std::cout << "stable: no blocking pairs\n";
        return 0;
    }
    std::cout << "UNSTABLE: " << blocking.size() << " blocking pair(s), first: "
              << blocking.front().first << "-" << blocking.front().second << "\n";
    return 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Reactive nearest-neighbor structure for road networks: separator hierarchy "
                 "builder and benchmark harness"};
    app.require_subcommand(1);

    // build
    std::string gr, second, out_path = "hierarchy.bin", strategy = "median", csv_path;
    std::uint32_t base_case = 20;
    std::uint64_t mem_cap = 0, seed = 1;
    auto* build = app.add_subcommand("build", "Parse a DIMACS network and build the hierarchy");
    build->add_option("gr", gr, "DIMACS .gr file")->required();
    build->add_option("co", second, "DIMACS .co file")->required();
    build->add_option("--out", out_path, "output hierarchy file");
    build->add_option("--base-case", base_case, "base case size (default 20)");
    build->add_option("--strategy", strategy, "median|centroid");
    build->add_option("--mem-cap", mem_cap, "refuse builds estimated above this many bytes");

    // bench
    WorkloadSpec spec;
    std::string kind = "mixed";
    std::string engines = "dijkstra-baseline,separator,separator-optimized";
    std::string sites_csv = "2,4,8,16,32,64,128,256,512,1024,2048,4096,8192,16384";
    auto* bench = app.add_subcommand("bench", "Time workloads against the Dijkstra baseline");
    bench->add_option("gr", gr, "DIMACS .gr file")->required();
    bench->add_option("co_or_hier", second, "DIMACS .co file or prebuilt hierarchy")->required();
    bench->add_option("--kind", kind, "queries|updates|mixed");
    bench->add_option("--ops", spec.op_count, "operations per trial (default 1000)");
    bench->add_option("--sites", sites_csv, "comma-separated site counts");
    bench->add_option("--runs", spec.runs, "runs per site count (default 5)");
    bench->add_option("--seed", seed, "workload seed");
    bench->add_option("--engines", engines, "comma-separated engine list");
    bench->add_option("--csv", csv_path, "output CSV path (stdout when omitted)");

    // match
    std::uint32_t site_count = 64;
    auto* match = app.add_subcommand("match", "Greedy stable matching over random sites");
    match->add_option("gr", gr, "DIMACS .gr file")->required();
    match->add_option("co_or_hier", second, "DIMACS .co file or prebuilt hierarchy")->required();
    match->add_option("--sites", site_count, "number of random sites");
    match->add_option("--seed", seed, "site selection seed");
    match->add_option("--base-case", base_case, "base case size when building in-process");
    match->add_option("--strategy", strategy, "median|centroid");

    // stats
    std::string hier_path;
    auto* stats = app.add_subcommand("stats", "Print hierarchy figures");
    stats->add_option("hier", hier_path, "hierarchy file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (build->parsed()) return cmd_build(gr, second, out_path, base_case, strategy, mem_cap);
        if (stats->parsed()) return cmd_stats(hier_path);
        if (bench->parsed()) {
            if (kind == "queries") spec.kind = WorkloadKind::Queries;
            else if (kind == "updates") spec.kind = WorkloadKind::Updates;
            else if (kind == "mixed") spec.kind = WorkloadKind::Mixed;
            else throw std::invalid_argument("unknown workload kind '" + kind + "'");
            spec.site_counts = parse_counts(sites_csv);
            spec.seed = seed;
            return cmd_bench(gr, second, spec, engines, csv_path);
        }
        if (match->parsed()) return cmd_match(gr, second, site_count, seed, base_case, strategy);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace sepnn
