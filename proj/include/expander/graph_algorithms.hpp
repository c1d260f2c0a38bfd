#pragma once

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "expander/multigraph.hpp"

namespace expander {

// BFS ball around a vertex or an edge. layers[i] holds the vertices at
// distance exactly i from the center set; induced_edges holds every edge of
// the host graph with both endpoints inside the ball (loops as (u,u), one
// entry per multiplicity unit).
struct Ball {
    std::vector<Vertex> center;
    int32_t radius = 0;
    std::vector<std::vector<Vertex>> layers;
    std::vector<std::pair<Vertex, Vertex>> induced_edges;

    std::vector<Vertex> vertices() const;
    size_t vertex_count() const;
};

Ball ball(const MultiGraph& g, Vertex center, int32_t radius);
Ball ball_edge(const MultiGraph& g, Vertex u, Vertex v, int32_t radius);

// edges - vertices + components of the ball subgraph; 0 iff forest,
// <= 1 iff at most one independent cycle. Loops raise the rank.
int64_t cycle_rank(const Ball& b);

inline constexpr int32_t kInfiniteGirth = std::numeric_limits<int32_t>::max();

// Exact girth; kInfiniteGirth for forests. Loops give 1, parallel edges 2.
int32_t girth(const MultiGraph& g);

// Girth restricted to cycles of length <= max_len. Returns the girth if a
// cycle that short exists, otherwise nullopt (meaning girth > max_len).
std::optional<int32_t> girth_at_most(const MultiGraph& g, int32_t max_len);

bool is_connected(const MultiGraph& g);
bool is_bipartite(const MultiGraph& g);

inline constexpr int32_t kUnreachable = std::numeric_limits<int32_t>::max();

int32_t distance(const MultiGraph& g, Vertex u, Vertex v);
// BFS truncated at depth cap; returns kUnreachable when dist(u,v) > cap.
int32_t distance_capped(const MultiGraph& g, Vertex u, Vertex v, int32_t cap);

}  // namespace expander
