#include "sepnn/workload.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "sepnn/reactive_nn.hpp"
#include "sepnn/shortest_paths.hpp"

namespace sepnn {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    auto split = [](std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    };
    return split(split(split(seed) ^ a) ^ b);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below needs a positive bound");
    std::uint64_t threshold = bound * (~0ull / bound);  // largest multiple of bound <= 2^64
    while (true) {
        std::uint64_t x = engine_();
        if (x < threshold) return x % bound;
    }
}

std::vector<std::uint32_t> Rng::distinct(std::uint32_t n, std::uint32_t count) {
    if (count > n) throw std::invalid_argument("cannot draw more distinct values than exist");
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::uint32_t i = 0; i < count; ++i) {
        std::uint32_t j = i + static_cast<std::uint32_t>(below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

Workload generate_workload(const WorkloadSpec& spec, NodeId n, std::uint32_t site_count,
                           std::uint32_t run) {
    if (spec.op_count == 0) throw std::invalid_argument("op_count must be positive");
    if (site_count > n)
        throw std::invalid_argument("site count " + std::to_string(site_count) +
                                    " exceeds node count " + std::to_string(n));
    Rng rng(mix_seed(spec.seed, site_count, run));
    Workload wl;
    wl.initial_sites = rng.distinct(n, site_count);

    std::vector<char> enabled(n, 0);
    std::vector<NodeId> enabled_list(wl.initial_sites);
    for (NodeId v : wl.initial_sites) enabled[v] = 1;

    auto gen_enable = [&]() {
        if (enabled_list.size() == n)
            throw std::invalid_argument("cannot enable: every node is already a site");
        NodeId v;
        do {
            v = static_cast<NodeId>(rng.below(n));
        } while (enabled[v]);
        enabled[v] = 1;
        enabled_list.push_back(v);
        return Op{Op::Kind::Enable, v};
    };
    auto gen_disable = [&]() {
        if (enabled_list.empty())
            throw std::invalid_argument("cannot disable: no enabled sites");
        std::size_t i = rng.below(enabled_list.size());
        NodeId v = enabled_list[i];
        enabled_list[i] = enabled_list.back();
        enabled_list.pop_back();
        enabled[v] = 0;
        return Op{Op::Kind::Disable, v};
    };

    wl.ops.reserve(spec.op_count);
    std::uint32_t updates_issued = 0;
    for (std::uint32_t i = 0; i < spec.op_count; ++i) {
        bool is_query = spec.kind == WorkloadKind::Queries ||
                        (spec.kind == WorkloadKind::Mixed && i % 2 == 0);
        if (is_query) {
            wl.ops.push_back({Op::Kind::Query, static_cast<NodeId>(rng.below(n))});
        } else {
            // Update sub-sequence alternates enable/disable, enable first.
            wl.ops.push_back(updates_issued % 2 == 0 ? gen_enable() : gen_disable());
            ++updates_issued;
        }
    }
    return wl;
}

Workload generate_workload(const WorkloadSpec& spec, NodeId n) {
    if (spec.site_counts.empty())
        throw std::invalid_argument("workload spec has no site counts");
    return generate_workload(spec, n, spec.site_counts.front(), 0);
}

std::string_view engine_name(Engine e) {
    switch (e) {
        case Engine::DijkstraBaseline: return "dijkstra-baseline";
        case Engine::Separator: return "separator";
        case Engine::SeparatorOptimized: return "separator-optimized";
    }
    return "?";
}

Engine parse_engine(std::string_view name) {
    if (name == "dijkstra-baseline" || name == "dijkstra") return Engine::DijkstraBaseline;
    if (name == "separator") return Engine::Separator;
    if (name == "separator-optimized" || name == "separator-opt")
        return Engine::SeparatorOptimized;
    throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

namespace {

std::uint64_t fold_answer(std::uint64_t h, const std::optional<NNAnswer>& ans) {
    auto fnv = [](std::uint64_t acc, std::uint64_t value) {
        for (int i = 0; i < 8; ++i) {
            acc ^= (value >> (8 * i)) & 0xFF;
            acc *= 0x100000001B3ull;
        }
        return acc;
    };
    if (!ans) return fnv(h, 0);
    h = fnv(h, static_cast<std::uint64_t>(ans->site) + 1);
    return fnv(h, std::bit_cast<std::uint64_t>(ans->dist));
}

struct RunResult {
    double ms = 0;
    std::uint64_t checksum;
};

RunResult run_baseline(const Graph& g, NearestSiteSearch& search, const Workload& wl,
                       std::uint64_t checksum) {
    SiteSet sites(g.node_count());
    for (NodeId v : wl.initial_sites) sites.set(v, true);
    auto t0 = std::chrono::steady_clock::now();
    for (const Op& op : wl.ops) {
        switch (op.kind) {
            case Op::Kind::Query:
                checksum = fold_answer(checksum, search.query(op.node, sites.flags()));
                break;
            case Op::Kind::Enable: sites.set(op.node, true); break;
            case Op::Kind::Disable: sites.set(op.node, false); break;
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    return {std::chrono::duration<double, std::milli>(t1 - t0).count(), checksum};
}

RunResult run_separator(ReactiveNN& r, const Workload& wl, bool optimized,
                        std::uint64_t checksum) {
    r.reset(wl.initial_sites);
    auto t0 = std::chrono::steady_clock::now();
    for (const Op& op : wl.ops) {
        switch (op.kind) {
            case Op::Kind::Query:
                checksum = fold_answer(checksum, r.nearest(op.node, optimized));
                break;
            case Op::Kind::Enable: r.enable(op.node); break;
            case Op::Kind::Disable: r.disable(op.node); break;
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    return {std::chrono::duration<double, std::milli>(t1 - t0).count(), checksum};
}

}  // namespace

WorkloadReport run_benchmark(const Graph& g, const Hierarchy* h, const WorkloadSpec& spec,
                             std::span<const Engine> engines) {
    if (spec.site_counts.empty()) throw std::invalid_argument("no site counts given");
    if (spec.runs == 0) throw std::invalid_argument("runs must be positive");
    bool needs_hierarchy = std::any_of(engines.begin(), engines.end(),
                                       [](Engine e) { return e != Engine::DijkstraBaseline; });
    if (needs_hierarchy && !h)
        throw std::invalid_argument(
            "separator engines need a hierarchy; build one first (see the build subcommand)");
    if (h && h->graph().node_count() != g.node_count())
        throw std::invalid_argument("hierarchy was built for a different graph");

    NearestSiteSearch search(g);
    std::optional<ReactiveNN> reactive;
    if (needs_hierarchy) reactive.emplace(*h);

    WorkloadReport report;
    for (std::uint32_t site_count : spec.site_counts) {
        // One workload per run, replayed identically by every engine.
        std::vector<Workload> workloads;
        workloads.reserve(spec.runs);
        for (std::uint32_t run = 0; run < spec.runs; ++run)
            workloads.push_back(generate_workload(spec, g.node_count(), site_count, run));

        for (Engine engine : engines) {
            ReportRow row;
            row.site_count = site_count;
            row.engine = engine;
            row.checksum = 0xCBF29CE484222325ull;
            row.min_ms = kInfDist;
            double total = 0;
            for (const Workload& wl : workloads) {
                RunResult rr;
                switch (engine) {
                    case Engine::DijkstraBaseline:
                        rr = run_baseline(g, search, wl, row.checksum);
                        break;
                    case Engine::Separator:
                        rr = run_separator(*reactive, wl, false, row.checksum);
                        break;
                    case Engine::SeparatorOptimized:
                        rr = run_separator(*reactive, wl, true, row.checksum);
                        break;
                }
                row.checksum = rr.checksum;
                total += rr.ms;
                row.min_ms = std::min(row.min_ms, rr.ms);
                row.max_ms = std::max(row.max_ms, rr.ms);
            }
            row.avg_ms = total / spec.runs;
            report.rows.push_back(row);
        }
    }
    return report;
}

std::string report_to_csv(const WorkloadReport& report) {
    std::string out = "site_count,engine,avg_ms,min_ms,max_ms,checksum\n";
    char buf[160];
    for (const ReportRow& r : report.rows) {
        std::snprintf(buf, sizeof(buf), "%u,%s,%.3f,%.3f,%.3f,%016llx\n", r.site_count,
                      std::string(engine_name(r.engine)).c_str(), r.avg_ms, r.min_ms, r.max_ms,
                      static_cast<unsigned long long>(r.checksum));
        out += buf;
    }
    return out;
}

}  // namespace sepnn
