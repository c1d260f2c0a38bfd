#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace expander {

using Vertex = int32_t;

// Undirected d-regular multigraph with loops. A loop contributes 1 to the
// degree of its vertex and 1 to the adjacency-matrix diagonal; a parallel
// edge contributes its multiplicity. Immutable after construction.
struct MultiGraph {
    Vertex n = 0;
    int32_t d = 0;
    // adj[v]: sorted non-loop neighbors of v, one entry per incidence.
    std::vector<std::vector<Vertex>> adj;
    // loops[v]: number of loops at v.
    std::vector<int32_t> loops;

    int64_t edge_count() const;  // non-loop edges, counting multiplicity
    int64_t loop_count() const;

    // Sorted (u,v) pairs with u <= v, one per multiplicity unit; loops as (u,u).
    std::vector<std::pair<Vertex, Vertex>> edge_list() const;

    bool operator==(const MultiGraph&) const = default;
};

// Validates indices, symmetry and d-regularity; reports the first offending
// vertex on failure.
MultiGraph build_graph(Vertex n, int32_t d,
                       std::span<const std::pair<Vertex, Vertex>> edges,
                       std::span<const Vertex> loop_vertices = {});

// Builds from per-vertex neighbor rows (rows need not be sorted). Checks the
// same invariants as build_graph.
MultiGraph graph_from_rows(Vertex n, int32_t d,
                           std::vector<std::vector<Vertex>> rows,
                           std::vector<int32_t> loops = {});

// Edge-list text format:
//   expander v1 n=<n> d=<d>
//   u v          (one line per edge counting multiplicity, u <= v, loops "u u")
void write_edge_list(std::ostream& out, const MultiGraph& g);
std::string edge_list_string(const MultiGraph& g);
void write_edge_list_file(const std::string& path, const MultiGraph& g);

MultiGraph read_edge_list(std::istream& in);
MultiGraph read_edge_list_file(const std::string& path);

}  // namespace expander
