#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "expander/errors.hpp"
#include "expander/graph_algorithms.hpp"
#include "expander/multigraph.hpp"
#include "support/fixtures.hpp"

using namespace expander;
using namespace expander::testing;

namespace {

// Independent union-find acyclicity oracle for cycle_rank == 0.
bool acyclic_by_union_find(const Ball& b) {
    auto verts = b.vertices();
    std::vector<int32_t> parent(verts.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [u, v] : b.induced_edges) {
        if (u == v) return false;
        auto lu = static_cast<int32_t>(std::lower_bound(verts.begin(), verts.end(), u) -
                                       verts.begin());
        auto lv = static_cast<int32_t>(std::lower_bound(verts.begin(), verts.end(), v) -
                                       verts.begin());
        int32_t ru = find(lu), rv = find(lv);
        if (ru == rv) return false;
        parent[ru] = rv;
    }
    return true;
}

}  // namespace

TEST_CASE("build: triangle, loop convention, parallel edges") {
    auto tri = build_graph(3, 2, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {1, 2}, {2, 0}});
    CHECK(tri.n == 3);
    CHECK(tri.edge_count() == 3);

    std::vector<std::pair<Vertex, Vertex>> e{{0, 1}};
    std::vector<Vertex> lv{0, 1};
    auto g2 = build_graph(2, 2, e, lv);  // degree = 1 edge + 1 loop each
    CHECK(g2.loops[0] == 1);
    CHECK(g2.loops[1] == 1);

    auto doubled = build_graph(
        4, 2, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {0, 1}, {2, 3}, {2, 3}});
    CHECK(doubled.adj[0] == std::vector<Vertex>{1, 1});
}

TEST_CASE("build rejects non-regular input naming the offender") {
    std::vector<std::pair<Vertex, Vertex>> e{{0, 1}};
    try {
        build_graph(3, 2, e);
        FAIL("expected a precondition_error");
    } catch (const precondition_error& err) {
        CHECK(std::string(err.what()).find("vertex 0") != std::string::npos);
        CHECK(std::string(err.what()).find("degree 1") != std::string::npos);
    }
    CHECK_THROWS_AS(build_graph(2, 1, std::vector<std::pair<Vertex, Vertex>>{{0, 5}}),
                    precondition_error);
}

TEST_CASE("degree sum equals n*d") {
    for (const auto& g : {petersen(), cycle_graph(8), complete_graph(6), foster()}) {
        int64_t total = 0;
        for (Vertex v = 0; v < g.n; ++v)
            total += static_cast<int64_t>(g.adj[v].size()) + g.loops[v];
        CHECK(total == static_cast<int64_t>(g.n) * g.d);
    }
}

TEST_CASE("ball on C_10") {
    auto c10 = cycle_graph(10);
    Ball b = ball(c10, 0, 2);
    CHECK(b.layers[0] == std::vector<Vertex>{0});
    CHECK(b.layers[1] == std::vector<Vertex>{1, 9});
    CHECK(b.layers[2] == std::vector<Vertex>{2, 8});
    CHECK(b.vertices() == std::vector<Vertex>{0, 1, 2, 8, 9});
    CHECK(b.induced_edges.size() == 4);
}

TEST_CASE("ball on Petersen") {
    auto p = petersen();
    for (Vertex v = 0; v < p.n; ++v) {
        Ball b1 = ball(p, v, 1);
        CHECK(b1.vertex_count() == 4);
        CHECK(b1.layers[1].size() == 3);
        CHECK(b1.induced_edges.size() == 3);  // girth 5: the 1-ball is a star
        Ball b2 = ball(p, v, 2);
        CHECK(b2.vertex_count() == 10);  // diameter 2
    }
}

TEST_CASE("ball layer structure property") {
    std::mt19937_64 seeds(42);
    for (int trial = 0; trial < 5; ++trial) {
        auto g = random_regular_graph(200, 3, seeds());
        Ball b = ball(g, static_cast<Vertex>(trial * 7), 4);
        std::vector<int32_t> layer_of(static_cast<size_t>(g.n), -1);
        for (size_t i = 0; i < b.layers.size(); ++i)
            for (Vertex v : b.layers[i]) layer_of[static_cast<size_t>(v)] = static_cast<int32_t>(i);
        for (size_t i = 1; i < b.layers.size(); ++i) {
            for (Vertex v : b.layers[i]) {
                bool has_parent = false;
                for (Vertex w : g.adj[v]) {
                    int32_t lw = layer_of[static_cast<size_t>(w)];
                    CHECK(!(lw >= 0 && lw < static_cast<int32_t>(i) - 1));
                    if (lw == static_cast<int32_t>(i) - 1) has_parent = true;
                }
                CHECK(has_parent);
            }
        }
    }
}

TEST_CASE("cycle_rank: trees, cycles, Petersen, loops") {
    auto p = petersen();
    Ball star = ball(p, 0, 1);
    CHECK(cycle_rank(star) == 0);  // 4 vertices, 3 edges: a tree
    Ball whole = ball(p, 0, 2);
    CHECK(cycle_rank(whole) == 15 - 10 + 1);

    auto c5 = cycle_graph(5);
    CHECK(cycle_rank(ball(c5, 0, 2)) == 1);

    std::vector<std::pair<Vertex, Vertex>> e{{0, 1}};
    std::vector<Vertex> lv{0, 1};
    auto looped = build_graph(2, 2, e, lv);
    CHECK(cycle_rank(ball(looped, 0, 1)) == 2);  // two loops raise the rank
}

TEST_CASE("cycle_rank zero agrees with union-find acyclicity") {
    std::mt19937_64 seeds(43);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = random_regular_graph(300, 3, seeds());
        for (Vertex v = 0; v < 30; ++v) {
            Ball b = ball(g, v * 10, 3);
            CHECK((cycle_rank(b) == 0) == acyclic_by_union_find(b));
        }
    }
}

TEST_CASE("girth, connectivity, bipartiteness") {
    auto p = petersen();
    CHECK(girth(p) == 5);
    CHECK(is_connected(p));
    CHECK_FALSE(is_bipartite(p));

    auto c8 = cycle_graph(8);
    CHECK(girth(c8) == 8);
    CHECK(is_bipartite(c8));

    CHECK(girth(complete_graph(4)) == 3);
    CHECK(girth(foster()) == 10);
    CHECK(is_bipartite(foster()));

    // Forest: a perfect matching has no cycles.
    auto matching = build_graph(4, 1, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {2, 3}});
    CHECK(girth(matching) == kInfiniteGirth);

    std::vector<std::pair<Vertex, Vertex>> e{{0, 1}};
    std::vector<Vertex> lv{0, 1};
    CHECK(girth(build_graph(2, 2, e, lv)) == 1);
    auto doubled = build_graph(2, 2, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {0, 1}});
    CHECK(girth(doubled) == 2);
    CHECK_FALSE(is_bipartite(build_graph(2, 2, e, lv)));

    CHECK(girth_at_most(p, 4) == std::nullopt);
    CHECK(girth_at_most(p, 5) == 5);
}

TEST_CASE("girth on random cubic graphs matches a brute-force BFS oracle") {
    // Oracle: for every vertex, BFS shortest cycle through it without caps.
    std::mt19937_64 seeds(99);
    for (int trial = 0; trial < 5; ++trial) {
        auto g = random_regular_graph(60, 3, seeds());
        int32_t expected = kInfiniteGirth;
        for (Vertex s = 0; s < g.n; ++s) {
            std::vector<int32_t> dist(static_cast<size_t>(g.n), -1);
            std::vector<Vertex> par(static_cast<size_t>(g.n), -1);
            std::vector<Vertex> q{s};
            dist[static_cast<size_t>(s)] = 0;
            for (size_t h = 0; h < q.size(); ++h) {
                Vertex u = q[h];
                bool skipped = false;
                for (Vertex w : g.adj[u]) {
                    if (w == par[static_cast<size_t>(u)] && !skipped) {
                        skipped = true;
                        continue;
                    }
                    if (dist[static_cast<size_t>(w)] < 0) {
                        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
                        par[static_cast<size_t>(w)] = u;
                        q.push_back(w);
                    } else {
                        expected = std::min(expected, dist[static_cast<size_t>(u)] +
                                                          dist[static_cast<size_t>(w)] + 1);
                    }
                }
            }
        }
        CHECK(girth(g) == expected);
    }
}

TEST_CASE("distance") {
    auto c10 = cycle_graph(10);
    CHECK(distance(c10, 0, 5) == 5);
    CHECK(distance(c10, 0, 7) == 3);
    CHECK(distance(c10, 3, 3) == 0);
    CHECK(distance_capped(c10, 0, 5, 4) == kUnreachable);
    CHECK(distance_capped(c10, 0, 5, 5) == 5);
    auto two = build_graph(4, 1, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {2, 3}});
    CHECK(distance(two, 0, 3) == kUnreachable);
}

TEST_CASE("edge ball layers") {
    auto c10 = cycle_graph(10);
    Ball b = ball_edge(c10, 0, 1, 2);
    CHECK(b.layers[0] == std::vector<Vertex>{0, 1});
    CHECK(b.layers[1] == std::vector<Vertex>{2, 9});
    CHECK(b.layers[2] == std::vector<Vertex>{3, 8});
}

TEST_CASE("edge-list format round trip and determinism") {
    std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    std::vector<Vertex> lv{0, 1, 2, 3};
    auto g = build_graph(4, 3, e, lv);
    std::string text = edge_list_string(g);
    CHECK(text.substr(0, 22) == "expander v1 n=4 d=3\n0 ");
    std::istringstream in(text);
    auto g2 = read_edge_list(in);
    CHECK(g2 == g);
    CHECK(edge_list_string(g2) == text);

    auto p = petersen();
    std::istringstream pin(edge_list_string(p));
    CHECK(read_edge_list(pin) == p);
}

TEST_CASE("edge-list parser rejects malformed input") {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_edge_list(in);
    };
    CHECK_THROWS_AS(parse(""), precondition_error);
    CHECK_THROWS_AS(parse("graph v1 n=2 d=1\n0 1\n"), precondition_error);
    CHECK_THROWS_AS(parse("expander v2 n=2 d=1\n0 1\n"), precondition_error);
    CHECK_THROWS_AS(parse("expander v1 n=2 d=1\n1 0\n"), precondition_error);   // u > v
    CHECK_THROWS_AS(parse("expander v1 n=2 d=1\n0 1 9\n"), precondition_error);
    CHECK_THROWS_AS(parse("expander v1 n=2 d=1\n0 5\n"), precondition_error);
    CHECK_THROWS_AS(parse("expander v1 n=3 d=1\n0 1\n"), precondition_error);   // vertex 2 bare
}
