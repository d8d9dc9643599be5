#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sepnn/graph.hpp"
#include "sepnn/hierarchy.hpp"

namespace sepnn {

/// splitmix64 step; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

/// Seeded generator with unbiased bounded draws. The engine (mt19937_64,
/// seeded through its constructor) is fully specified by the standard, so
/// identical seeds replay identical workloads on any platform; no
/// distribution objects are involved.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound) by rejection sampling.
    std::uint64_t below(std::uint64_t bound);

    /// `count` distinct values from [0, n), by partial Fisher-Yates shuffle.
    std::vector<std::uint32_t> distinct(std::uint32_t n, std::uint32_t count);

private:
    std::mt19937_64 engine_;
};

enum class WorkloadKind { Queries, Updates, Mixed };

struct WorkloadSpec {
    WorkloadKind kind = WorkloadKind::Mixed;
    std::uint32_t op_count = 1000;
    std::vector<std::uint32_t> site_counts;
    std::uint32_t runs = 5;
    std::uint64_t seed = 0;
};

struct Op {
    enum class Kind : std::uint8_t { Query, Enable, Disable };
    Kind kind;
    NodeId node;

    friend bool operator==(const Op&, const Op&) = default;
};

struct Workload {
    std::vector<NodeId> initial_sites;
    std::vector<Op> ops;
};

/// Deterministic workload for one (site count, run) cell: `site_count`
/// distinct uniform initial sites, then op_count operations. Queries target
/// uniform random nodes; enables pick uniform currently-disabled nodes and
/// disables uniform currently-enabled sites. Updates alternate
/// enable/disable starting with enable; mixed alternates query/update with
/// the same update sub-alternation. The same (spec.seed, site_count, run)
/// always yields the same workload, so all engines replay identical
/// operation lists.
Workload generate_workload(const WorkloadSpec& spec, NodeId n, std::uint32_t site_count,
                           std::uint32_t run);
/// First site count, run 0.
Workload generate_workload(const WorkloadSpec& spec, NodeId n);

enum class Engine { DijkstraBaseline, Separator, SeparatorOptimized };

std::string_view engine_name(Engine e);
Engine parse_engine(std::string_view name);

struct ReportRow {
    std::uint32_t site_count = 0;
    Engine engine = Engine::DijkstraBaseline;
    double avg_ms = 0, min_ms = 0, max_ms = 0;
    std::uint64_t checksum = 0;  // fold of all query answers across runs
};

struct WorkloadReport {
    std::vector<ReportRow> rows;
};

/// Runs every (site count, run, engine) cell on identical workloads and
/// times the operation loop only (site initialization excluded). The
/// baseline engine answers queries with a Dijkstra search and treats updates
/// as a membership flip; the separator engines run on the provided
/// hierarchy, which is required when they are requested.
WorkloadReport run_benchmark(const Graph& g, const Hierarchy* h, const WorkloadSpec& spec,
                             std::span<const Engine> engines);

/// Fixed schema: site_count,engine,avg_ms,min_ms,max_ms,checksum.
std::string report_to_csv(const WorkloadReport& report);

}  // namespace sepnn
