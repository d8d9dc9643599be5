#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "sepnn/cli.hpp"
#include "sepnn/dimacs.hpp"
#include "sepnn/workload.hpp"
#include "support.hpp"

using namespace sepnn;
using namespace testsupport;

namespace {

WorkloadSpec spec_of(WorkloadKind kind, std::uint32_t ops, std::vector<std::uint32_t> sites,
                     std::uint32_t runs, std::uint64_t seed) {
    WorkloadSpec s;
    s.kind = kind;
    s.op_count = ops;
    s.site_counts = std::move(sites);
    s.runs = runs;
    s.seed = seed;
    return s;
}

int run_cli_args(std::vector<std::string> args) {
    std::vector<const char*> argv{"sepnn-cli"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("sepnn-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("updates workloads alternate enable and disable") {
    Workload wl = generate_workload(spec_of(WorkloadKind::Updates, 4, {3}, 1, 9), 32);
    REQUIRE(wl.ops.size() == 4);
    CHECK(wl.ops[0].kind == Op::Kind::Enable);
    CHECK(wl.ops[1].kind == Op::Kind::Disable);
    CHECK(wl.ops[2].kind == Op::Kind::Enable);
    CHECK(wl.ops[3].kind == Op::Kind::Disable);
    CHECK(wl.initial_sites.size() == 3);
}

TEST_CASE("mixed workloads alternate query/update with the update sub-alternation") {
    Workload wl = generate_workload(spec_of(WorkloadKind::Mixed, 4, {3}, 1, 9), 32);
    REQUIRE(wl.ops.size() == 4);
    CHECK(wl.ops[0].kind == Op::Kind::Query);
    CHECK(wl.ops[1].kind == Op::Kind::Enable);
    CHECK(wl.ops[2].kind == Op::Kind::Query);
    CHECK(wl.ops[3].kind == Op::Kind::Disable);
}

TEST_CASE("workload generation is deterministic and stateful") {
    WorkloadSpec s = spec_of(WorkloadKind::Mixed, 200, {10}, 1, 777);
    Workload a = generate_workload(s, 50, 10, 3);
    Workload b = generate_workload(s, 50, 10, 3);
    CHECK(a.initial_sites == b.initial_sites);
    CHECK(a.ops == b.ops);
    // A different run gets a different workload.
    Workload c = generate_workload(s, 50, 10, 4);
    CHECK(a.ops != c.ops);

    // Enables only ever touch disabled nodes, disables only enabled sites.
    std::vector<char> enabled(50, 0);
    for (NodeId v : a.initial_sites) enabled[v] = 1;
    for (const Op& op : a.ops) {
        if (op.kind == Op::Kind::Enable) {
            CHECK_FALSE(enabled[op.node]);
            enabled[op.node] = 1;
        } else if (op.kind == Op::Kind::Disable) {
            CHECK(enabled[op.node]);
            enabled[op.node] = 0;
        }
    }
}

TEST_CASE("workload validation") {
    CHECK_THROWS_AS(generate_workload(spec_of(WorkloadKind::Queries, 5, {40}, 1, 1), 32),
                    std::invalid_argument);  // site count > n
    CHECK_THROWS_AS(generate_workload(spec_of(WorkloadKind::Queries, 0, {1}, 1, 1), 32),
                    std::invalid_argument);  // no ops
    CHECK_THROWS_AS(generate_workload(spec_of(WorkloadKind::Updates, 2, {}, 1, 1), 32),
                    std::invalid_argument);  // empty site list
}

TEST_CASE("run_benchmark rows agree across engines and order their statistics") {
    Rng rng(60);
    Graph g = make_grid(12, 12, &rng);
    Hierarchy h = Hierarchy::build(g, MedianLineStrategy{}, 8);
    WorkloadSpec s = spec_of(WorkloadKind::Mixed, 120, {4, 16, 60}, 3, 4242);
    std::vector<Engine> engines{Engine::DijkstraBaseline, Engine::Separator,
                                Engine::SeparatorOptimized};
    WorkloadReport report = run_benchmark(g, &h, s, engines);
    REQUIRE(report.rows.size() == 9);
    for (std::size_t i = 0; i < report.rows.size(); i += 3) {
        CHECK(report.rows[i].checksum == report.rows[i + 1].checksum);
        CHECK(report.rows[i].checksum == report.rows[i + 2].checksum);
    }
    for (const ReportRow& row : report.rows) {
        CHECK(row.min_ms <= row.avg_ms);
        CHECK(row.avg_ms <= row.max_ms);
    }

    SUBCASE("csv schema") {
        std::istringstream csv(report_to_csv(report));
        std::string line;
        REQUIRE(std::getline(csv, line));
        CHECK(line == "site_count,engine,avg_ms,min_ms,max_ms,checksum");
        std::size_t rows = 0;
        while (std::getline(csv, line)) {
            ++rows;
            CHECK(std::count(line.begin(), line.end(), ',') == 5);
        }
        CHECK(rows == report.rows.size());
    }

    SUBCASE("checksums are reproducible for identical specs") {
        WorkloadReport again = run_benchmark(g, &h, s, engines);
        for (std::size_t i = 0; i < report.rows.size(); ++i)
            CHECK(report.rows[i].checksum == again.rows[i].checksum);
    }

    SUBCASE("separator engines without a hierarchy are refused") {
        CHECK_THROWS_WITH_AS(run_benchmark(g, nullptr, s, engines),
                             doctest::Contains("build"), std::invalid_argument);
        std::vector<Engine> baseline_only{Engine::DijkstraBaseline};
        CHECK_NOTHROW(run_benchmark(g, nullptr, spec_of(WorkloadKind::Queries, 10, {4}, 1, 1),
                                    baseline_only));
    }
}

TEST_CASE("engine names round-trip") {
    for (Engine e : {Engine::DijkstraBaseline, Engine::Separator, Engine::SeparatorOptimized})
        CHECK(parse_engine(engine_name(e)) == e);
    CHECK_THROWS_AS(parse_engine("voronoi"), std::invalid_argument);
}

TEST_CASE("cli end to end on a small embedded network") {
    TempDir tmp;
    Rng rng(61);
    Graph g = make_grid(9, 8, &rng);
    write_file(tmp.file("g.gr"), write_dimacs_gr(g));
    write_file(tmp.file("g.co"), write_dimacs_co(g));

    SUBCASE("build then stats then bench then match") {
        CHECK(run_cli_args({"build", tmp.file("g.gr"), tmp.file("g.co"), "--out",
                            tmp.file("g.hier"), "--base-case", "5"}) == 0);
        CHECK(run_cli_args({"stats", tmp.file("g.hier")}) == 0);
        CHECK(run_cli_args({"bench", tmp.file("g.gr"), tmp.file("g.hier"), "--kind", "mixed",
                            "--ops", "60", "--sites", "2,8", "--runs", "2", "--seed", "5",
                            "--csv", tmp.file("out.csv")}) == 0);
        std::string csv = read_text_file(tmp.file("out.csv"));
        CHECK(csv.starts_with("site_count,engine,avg_ms,min_ms,max_ms,checksum\n"));
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 3);

        // Identical invocation: identical CSV except the timing columns.
        CHECK(run_cli_args({"bench", tmp.file("g.gr"), tmp.file("g.hier"), "--kind", "mixed",
                            "--ops", "60", "--sites", "2,8", "--runs", "2", "--seed", "5",
                            "--csv", tmp.file("out2.csv")}) == 0);
        auto strip_timing = [](const std::string& text) {
            std::istringstream in(text);
            std::string line, kept;
            while (std::getline(in, line)) {
                std::size_t first = line.find(',');
                std::size_t second = line.find(',', first + 1);
                std::size_t last = line.rfind(',');
                kept += line.substr(0, second) + line.substr(last) + "\n";
            }
            return kept;
        };
        CHECK(strip_timing(csv) == strip_timing(read_text_file(tmp.file("out2.csv"))));

        CHECK(run_cli_args({"match", tmp.file("g.gr"), tmp.file("g.hier"), "--sites", "12",
                            "--seed", "3"}) == 0);
    }

    SUBCASE("bench on a raw network with separator engines instructs to build") {
        CHECK(run_cli_args({"bench", tmp.file("g.gr"), tmp.file("g.co"), "--ops", "10",
                            "--sites", "2", "--runs", "1"}) == 1);
        CHECK(run_cli_args({"bench", tmp.file("g.gr"), tmp.file("g.co"), "--ops", "10",
                            "--sites", "2", "--runs", "1", "--engines",
                            "dijkstra-baseline"}) == 0);
    }

    SUBCASE("build refuses under a tiny memory cap") {
        CHECK(run_cli_args({"build", tmp.file("g.gr"), tmp.file("g.co"), "--out",
                            tmp.file("g.hier"), "--mem-cap", "64"}) == 1);
        CHECK_FALSE(std::filesystem::exists(tmp.file("g.hier")));
    }

    SUBCASE("bad inputs exit nonzero") {
        CHECK(run_cli_args({"stats", tmp.file("missing.hier")}) == 1);
        write_file(tmp.file("bad.gr"), "p sp 2 1\na 9 1 1\n");
        CHECK(run_cli_args({"build", tmp.file("bad.gr"), tmp.file("g.co"), "--out",
                            tmp.file("x.hier")}) == 1);
    }
}
