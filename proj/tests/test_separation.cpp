#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sepnn/separation.hpp"
#include "support.hpp"

using namespace sepnn;
using namespace testsupport;

namespace {

Graph path_on_x_axis(NodeId n) {
    Graph g(n, false);
    std::vector<Coord> coords(n);
    for (NodeId i = 0; i < n; ++i) {
        coords[i] = {static_cast<double>(i), 0.0};
        if (i + 1 < n) g.add_edge(i, i + 1, 1.0);
    }
    g.set_coords(std::move(coords));
    return g;
}

}  // namespace

TEST_CASE("median line separator on a 3-node embedded path") {
    // Enumerating both axes by hand: the x split puts {0,1} low and {2} high,
    // so the crossing edge 1-2 yields separator {1}; the y coordinates are all
    // equal, so the y split (id order) gives the same. Tie keeps the x axis.
    Graph g = path_on_x_axis(3);
    Separation s = median_line_separator(g, g.coords());
    CHECK(s.separator == std::vector<NodeId>{1});
    REQUIRE(s.parts.size() == 2);
    CHECK(s.parts[0] == std::vector<NodeId>{0});
    CHECK(s.parts[1] == std::vector<NodeId>{2});
    CHECK(validate_separation(g, s).empty());
}

TEST_CASE("median line separator on a single embedded edge") {
    Graph g = path_on_x_axis(2);
    Separation s = median_line_separator(g, g.coords());
    CHECK(s.separator == std::vector<NodeId>{0});  // the lower-x endpoint
    REQUIRE(s.parts.size() == 1);
    CHECK(s.parts[0] == std::vector<NodeId>{1});
}

TEST_CASE("median line separator on a 4x4 unit grid") {
    Graph g = make_grid(4, 4);
    Separation s = median_line_separator(g, g.coords());
    CHECK(s.separator.size() <= 4);
    for (const auto& part : s.parts) CHECK(part.size() <= 10);
    CHECK(validate_separation(g, s).empty());
}

TEST_CASE("median line separator of a k x k grid has at most k nodes") {
    for (NodeId k : {3u, 5u, 8u, 12u, 17u}) {
        Graph g = make_grid(k, k);
        Separation s = median_line_separator(g, g.coords());
        CHECK(s.separator.size() <= k);
        CHECK(validate_separation(g, s).empty());
    }
}

TEST_CASE("median line separator is deterministic and valid on random grids") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        NodeId w = 2 + static_cast<NodeId>(rng.below(14));
        NodeId h = 2 + static_cast<NodeId>(rng.below(14));
        Graph g = make_grid(w, h, &rng);
        Separation a = median_line_separator(g, g.coords());
        Separation b = median_line_separator(g, g.coords());
        CHECK(a.separator == b.separator);
        CHECK(a.parts == b.parts);
        CHECK(validate_separation(g, a).empty());
    }
}

TEST_CASE("median line separator on disconnected input") {
    SUBCASE("small components pass through with an empty separator") {
        Graph g(6, false);  // three embedded 2-node components
        std::vector<Coord> coords;
        for (NodeId i = 0; i < 6; ++i) coords.push_back({static_cast<double>(i), 0.0});
        g.set_coords(std::move(coords));
        g.add_edge(0, 1, 1.0);
        g.add_edge(2, 3, 1.0);
        g.add_edge(4, 5, 1.0);
        Separation s = median_line_separator(g, g.coords());
        CHECK(s.separator.empty());
        CHECK(s.parts.size() == 3);
        CHECK(validate_separation(g, s).empty());
    }
    SUBCASE("an oversized component gets split, small ones pass through") {
        // 8-node path plus an isolated pair: the path exceeds ceil(2*10/3)=7.
        Graph g(10, false);
        std::vector<Coord> coords;
        for (NodeId i = 0; i < 10; ++i) coords.push_back({static_cast<double>(i), 0.0});
        g.set_coords(std::move(coords));
        for (NodeId i = 0; i + 1 < 8; ++i) g.add_edge(i, i + 1, 1.0);
        g.add_edge(8, 9, 1.0);
        Separation s = median_line_separator(g, g.coords());
        CHECK(!s.separator.empty());
        CHECK(validate_separation(g, s).empty());
    }
}

TEST_CASE("median line separator configuration errors") {
    Graph g(3, false);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    CHECK_THROWS_AS(MedianLineStrategy{}.separate(g), std::invalid_argument);  // no coords
    Graph tiny = path_on_x_axis(1);
    CHECK_THROWS_AS(median_line_separator(tiny, tiny.coords()), std::invalid_argument);
}

TEST_CASE("centroid separator of a 5-node path") {
    Graph g(5, false);
    for (NodeId i = 0; i + 1 < 5; ++i) g.add_edge(i, i + 1, 1.0);
    Separation s = centroid_separator(g);
    CHECK(s.separator == std::vector<NodeId>{2});
    REQUIRE(s.parts.size() == 2);
    CHECK(s.parts[0].size() == 2);
    CHECK(s.parts[1].size() == 2);
    CHECK(validate_separation(g, s).empty());
}

TEST_CASE("centroid separator of a star") {
    Graph g(7, false);
    for (NodeId leaf = 1; leaf < 7; ++leaf) g.add_edge(0, leaf, 1.0);
    Separation s = centroid_separator(g);
    CHECK(s.separator == std::vector<NodeId>{0});
    CHECK(s.parts.size() == 6);
    for (const auto& part : s.parts) CHECK(part.size() == 1);
}

TEST_CASE("centroid of a random 100-node tree splits into halves") {
    Rng rng(41);
    Graph g = make_random_tree(100, rng);
    Separation s = centroid_separator(g);
    REQUIRE(s.separator.size() == 1);
    for (const auto& part : s.parts) CHECK(part.size() <= 50);
    CHECK(validate_separation(g, s).empty());

    // Exhaustive check: no node does better than the chosen centroid, and the
    // chosen one is the smallest id among the minimizers.
    auto worst_part = [&](NodeId c) {
        std::size_t worst = 0;
        std::vector<char> removed(g.node_count(), 0);
        removed[c] = 1;
        std::vector<char> seen(g.node_count(), 0);
        for (NodeId start = 0; start < g.node_count(); ++start) {
            if (seen[start] || removed[start]) continue;
            std::size_t size = 0;
            std::vector<NodeId> stack{start};
            seen[start] = 1;
            while (!stack.empty()) {
                NodeId u = stack.back();
                stack.pop_back();
                ++size;
                for (const Arc& a : g.out(u))
                    if (!seen[a.to] && !removed[a.to]) {
                        seen[a.to] = 1;
                        stack.push_back(a.to);
                    }
            }
            worst = std::max(worst, size);
        }
        return worst;
    };
    std::size_t chosen = worst_part(s.separator[0]);
    for (NodeId c = 0; c < g.node_count(); ++c) {
        CHECK(worst_part(c) >= chosen);
        if (c < s.separator[0]) CHECK(worst_part(c) > chosen);
    }
}

TEST_CASE("centroid separator rejects cycles") {
    Graph g(3, false);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    g.add_edge(2, 0, 1.0);
    CHECK_THROWS_AS(centroid_separator(g), StrategyError);
}

TEST_CASE("validate_separation reports planted violations") {
    Graph g(4, false);  // path 0-1-2-3
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    g.add_edge(2, 3, 1.0);

    SUBCASE("crossing edge") {
        Separation bad{{}, {{0, 1}, {2, 3}}};  // edge 1-2 joins the parts
        auto v = validate_separation(g, bad);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == SeparationViolation::Kind::CrossingEdge);
        CHECK(v[0].detail.find("1-2") != std::string::npos);
    }
    SUBCASE("oversized part") {
        Separation bad{{0}, {{1, 2, 3}}};  // limit is ceil(8/3) = 3... use n=4: limit 3
        auto v = validate_separation(g, bad);
        CHECK(v.empty());  // 3 <= ceil(8/3)=3: actually balanced
        Separation worse{{}, {{0, 1, 2, 3}}};
        auto v2 = validate_separation(g, worse);
        REQUIRE(v2.size() == 1);
        CHECK(v2[0].kind == SeparationViolation::Kind::Balance);
    }
    SUBCASE("coverage and overlap") {
        Separation bad{{1}, {{0}, {0, 3}}};
        auto v = validate_separation(g, bad);
        bool saw_overlap = false, saw_coverage = false;
        for (const auto& viol : v) {
            saw_overlap |= viol.kind == SeparationViolation::Kind::Overlap;
            saw_coverage |= viol.kind == SeparationViolation::Kind::Coverage;
        }
        CHECK(saw_overlap);   // node 0 claimed twice
        CHECK(saw_coverage);  // node 2 missing
    }
}
