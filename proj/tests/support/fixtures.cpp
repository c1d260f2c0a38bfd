#include "fixtures.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace expander::testing {

MultiGraph cycle_graph(Vertex n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return build_graph(n, 2, edges);
}

MultiGraph complete_graph(Vertex n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return build_graph(n, n - 1, edges);
}

MultiGraph petersen() {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);          // outer 5-cycle
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
        edges.emplace_back(i, 5 + i);                // spokes
    }
    return build_graph(10, 3, edges);
}

MultiGraph foster() {
    // LCF [17, -9, 37, -37, 9, -17]^15 on a 90-cycle.
    const int lcf[6] = {17, -9, 37, -37, 9, -17};
    const Vertex n = 90;
    std::set<std::pair<Vertex, Vertex>> chords;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < n; ++i) {
        edges.emplace_back(i, (i + 1) % n);
        Vertex j = static_cast<Vertex>(((i + lcf[i % 6]) % n + n) % n);
        auto e = std::minmax(i, j);
        if (chords.insert({e.first, e.second}).second) edges.emplace_back(e.first, e.second);
    }
    return build_graph(n, 3, edges);
}

namespace {

// Explicit Fisher-Yates with rejection-free bounded draws so the result does
// not depend on the standard library's shuffle implementation.
uint64_t bounded(std::mt19937_64& rng, uint64_t bound) {
    uint64_t mask = ~uint64_t{0};
    uint64_t limit = mask - mask % bound;
    uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

}  // namespace

MultiGraph random_regular_graph(Vertex n, int32_t d, uint64_t seed) {
    if (static_cast<int64_t>(n) * d % 2 != 0)
        throw std::invalid_argument("random regular graph needs nd even");
    std::mt19937_64 rng(seed);
    std::vector<Vertex> stubs(static_cast<size_t>(n) * static_cast<size_t>(d));
    for (int attempt = 0; attempt < 500; ++attempt) {
        size_t k = 0;
        for (Vertex v = 0; v < n; ++v)
            for (int32_t i = 0; i < d; ++i) stubs[k++] = v;
        for (size_t i = stubs.size() - 1; i > 0; --i)
            std::swap(stubs[i], stubs[bounded(rng, i + 1)]);
        std::set<std::pair<Vertex, Vertex>> seen;
        std::vector<std::pair<Vertex, Vertex>> edges;
        bool ok = true;
        for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
            Vertex a = stubs[i], b = stubs[i + 1];
            if (a == b) {
                ok = false;
                break;
            }
            auto e = std::minmax(a, b);
            if (!seen.insert({e.first, e.second}).second) {
                ok = false;
                break;
            }
            edges.emplace_back(e.first, e.second);
        }
        if (ok) return build_graph(n, d, edges);
    }
    throw std::runtime_error("pairing model failed to produce a simple graph");
}

MultiGraph two_copy_swap(const MultiGraph& g) {
    const Vertex n = g.n;
    auto edges = g.edge_list();
    if (edges.size() < 2) throw std::invalid_argument("two_copy_swap needs edges");
    auto e1 = edges.front();
    auto e2 = edges.back();
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u != e1.first || v != e1.second) out.emplace_back(u, v);
        if (u != e2.first || v != e2.second)
            out.emplace_back(static_cast<Vertex>(u + n), static_cast<Vertex>(v + n));
    }
    out.emplace_back(e1.first, static_cast<Vertex>(e2.first + n));
    out.emplace_back(e1.second, static_cast<Vertex>(e2.second + n));
    return build_graph(static_cast<Vertex>(2 * n), g.d, out);
}

}  // namespace expander::testing
