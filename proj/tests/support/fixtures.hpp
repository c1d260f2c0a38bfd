#pragma once

#include <cstdint>

#include "expander/multigraph.hpp"

namespace expander::testing {

MultiGraph cycle_graph(Vertex n);
MultiGraph complete_graph(Vertex n);
MultiGraph petersen();
// The 90-vertex cubic Foster graph (girth 10), from its LCF description.
MultiGraph foster();

// Simple d-regular graph from the pairing model, regenerating until no loops
// or parallel edges remain. Deterministic in the seed.
MultiGraph random_regular_graph(Vertex n, int32_t d, uint64_t seed);

// Two disjoint copies of g joined by a 2-edge swap: the first edge (a,b) of
// copy one and (c,d) of copy two are replaced by (a, c') and (b, d'). Keeps
// the graph d-regular and nearly disconnected, so the top nontrivial
// eigenvalue rises toward d.
MultiGraph two_copy_swap(const MultiGraph& g);

}  // namespace expander::testing
