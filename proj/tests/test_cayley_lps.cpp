#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "expander/cayley_lps.hpp"
#include "expander/errors.hpp"
#include "expander/graph_algorithms.hpp"
#include "expander/number_theory.hpp"

using namespace expander;

TEST_CASE("canonical sign normalization") {
    auto id = canonical(1, 0, 0, 1, 13);
    CHECK(id == ProjMat{1, 0, 0, 1, 13});

    // a11 = 12 = -1 mod 13 flips to a11 = 1.
    auto m = canonical(12, 0, 0, 12, 13);
    CHECK(m.a11 == 1);
    CHECK(m.a22 == 1);

    // a11 = 0, a12 = 12: det = -a12*a21 = 1 needs a21 = 1; flips to a12 = 1.
    auto z = canonical(0, 12, 1, 0, 13);
    CHECK(z.a11 == 0);
    CHECK(z.a12 == 1);
    CHECK(z.a21 == 12);

    CHECK_THROWS_AS(canonical(1, 0, 0, 2, 13), precondition_error);  // det = 2
}

TEST_CASE("numbering bijection on PSL(2,13)") {
    CHECK(psl2_size(13) == 1092);
    auto m0 = mat_of_index(0, 13);
    CHECK(m0 == ProjMat{1, 0, 0, 1, 13});
    auto m1 = mat_of_index(1, 13);
    CHECK(m1 == ProjMat{1, 0, 1, 1, 13});
    CHECK_THROWS_AS(mat_of_index(1092, 13), precondition_error);
    CHECK_THROWS_AS(mat_of_index(-1, 13), precondition_error);
}

TEST_CASE("index_of and mat_of_index are mutually inverse") {
    for (int64_t q : {5, 13, 17}) {
        std::set<ProjMat> seen;
        for (int64_t i = 0; i < psl2_size(q); ++i) {
            ProjMat m = mat_of_index(i, q);
            // Every produced matrix is canonical with determinant 1.
            int64_t det = ((m.a11 * m.a22 - m.a12 * m.a21) % q + q) % q;
            CHECK(det == 1);
            CHECK(index_of(m) == i);
            seen.insert(m);
        }
        CHECK(static_cast<int64_t>(seen.size()) == psl2_size(q));
    }
}

TEST_CASE("group operations") {
    for (int64_t i : {0, 1, 17, 500, 1091}) {
        ProjMat m = mat_of_index(i, 13);
        CHECK(mul(m, inverse(m)) == ProjMat{1, 0, 0, 1, 13});
        CHECK(mul(inverse(m), m) == ProjMat{1, 0, 0, 1, 13});
    }
}

TEST_CASE("lps_generators: counts, distinctness, inverse closure") {
    auto g529 = lps_generators(5, 29);
    CHECK(g529.size() == 6);
    std::set<ProjMat> set529(g529.begin(), g529.end());
    CHECK(set529.size() == 6);
    for (const auto& g : g529) CHECK(set529.count(inverse(g)) == 1);

    auto g1317 = lps_generators(13, 17);
    CHECK(g1317.size() == 14);
    std::set<ProjMat> set1317(g1317.begin(), g1317.end());
    CHECK(set1317.size() == 14);
    for (const auto& g : g1317) CHECK(set1317.count(inverse(g)) == 1);

    CHECK_THROWS_AS(lps_generators(5, 13), precondition_error);  // legendre(5,13) = -1
    CHECK_THROWS_AS(lps_generators(5, 5), precondition_error);
    CHECK_THROWS_AS(lps_generators(7, 29), precondition_error);  // 7 = 3 mod 4
}

TEST_CASE("build_lps(13,17): size, regularity, connectivity") {
    MultiGraph g = build_lps(13, 17);
    CHECK(g.n == 2448);
    CHECK(g.d == 14);
    CHECK(g.loop_count() == 0);
    CHECK(is_connected(g));
    CHECK_FALSE(is_bipartite(g));
    for (Vertex v : {0, 100, 2447}) CHECK(g.adj[v].size() == 14);
}

TEST_CASE("build_lps(5,29): acceptance-scale instance") {
    MultiGraph g = build_lps(5, 29);
    CHECK(g.n == 12180);
    CHECK(g.d == 6);
    CHECK(is_connected(g));
    CHECK_FALSE(is_bipartite(g));
}

TEST_CASE("vertex-transitivity spot check: radius-2 layer profile is constant") {
    MultiGraph g = build_lps(13, 17);
    std::vector<size_t> reference;
    for (Vertex v : {0, 17, 203, 1000, 2447}) {
        Ball b = ball(g, v, 2);
        std::vector<size_t> profile;
        for (const auto& layer : b.layers) profile.push_back(layer.size());
        if (reference.empty())
            reference = profile;
        else
            CHECK(profile == reference);
    }
}
