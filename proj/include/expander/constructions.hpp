#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expander/cayley_lps.hpp"
#include "expander/cayley_quaternion.hpp"
#include "expander/multigraph.hpp"
#include "expander/spectral.hpp"

namespace expander {

// Greedy prime decomposition of a degree: repeatedly subtract p+1 for the
// largest prime p = 1 mod 4 while the remainder exceeds 4.
struct DegreeDecomposition {
    std::vector<int64_t> primes;  // descending as produced by the greedy loop
    int32_t leftover = 0;         // y
    int32_t d = 0;
    bool supported = false;  // leftover <= 4
};

DegreeDecomposition greedy_decompose(int32_t d);

enum class Backend { psl, quaternion };

// One summand of a packed generating multiset, kept for the union-rule
// spectral check and the build manifest.
struct PackBlock {
    std::string label;
    int64_t prime = 0;  // 0 for leftover blocks
    double lambda_bound = 0.0;
    std::vector<ProjMat> psl_gens;
    std::vector<QuatClass> quat_gens;
};

struct PackOptions {
    Backend backend = Backend::psl;
    int64_t q = 0;        // psl: explicit group prime (0 = auto-select)
    int64_t q1 = 0, q2 = 0;  // quaternion: explicit primes (0 = find_qpair)
    int32_t s = 0, t = 0;    // quaternion: explicit exponents (0 = from target_n)
    int64_t target_n = 0;    // minimum group size for auto selection
    bool simple = false;     // require a duplicate-free generating set
};

struct PackResult {
    MultiGraph graph;
    DegreeDecomposition decomposition;
    std::vector<PackBlock> blocks;
    double bound = 0.0;  // union rule: sum 2*sqrt(p_i) + 2 per pair + 1 per involution
    BoundParams bound_params;
    // resolved group parameters
    int64_t q = 0;  // psl
    FactoredModulus modulus;  // quaternion

    // Rebuilds the Cayley graph of a single block (for union checks).
    MultiGraph block_graph(size_t block_index) const;
};

PackResult pack_cayley(int32_t d, const PackOptions& opts);

struct AugmentOptions {
    Backend backend = Backend::psl;
    bool matching = false;       // replace loops by a matching (n must be even)
    int64_t q1 = 0, q2 = 0;      // quaternion backend: base group primes
};

struct AugmentResult {
    MultiGraph graph;
    int64_t p = 0;
    int64_t q = 0;  // psl backend
    FactoredModulus modulus;  // quaternion backend
    int64_t base_n = 0;
    int64_t r_new = 0;
    int64_t loops_added = 0;
    int64_t matching_pairs = 0;
    double bound = 0.0;  // sqrt(2p+2) + sqrt(p) + (r_new/m)(p+2)
    BoundParams bound_params;
};

// Graph on exactly n vertices of degree d = p+2: the largest admissible base
// graph below n, plus n - base_n new vertices wired to disjoint neighbor
// blocks, with loops (or a matching) on the untouched base vertices. When
// n equals the base size the base graph is returned unchanged.
AugmentResult augment_to_exact(int64_t n, int64_t p, const AugmentOptions& opts = {});

struct SparseSet {
    std::vector<Vertex> vertices;
    int32_t r = 0;
    Vertex base_n = 0;
};

struct SparseSetOptions {
    // Skip the (2r+4)-ball hypothesis and pick vertices with cycle-free
    // (r+1)-balls directly; the cardinality lower bound is not guaranteed.
    bool relaxed = false;
};

// The sparse well-separated set: every (r+1)-ball of a member is cycle-free
// and members are pairwise at distance >= 2r+3. u_target = 0 exhausts the
// greedy; otherwise stops once u_target vertices are found.
SparseSet find_sparse_set(const MultiGraph& g, int32_t r, int64_t u_target,
                          const SparseSetOptions& opts = {});

// Re-checks the conclusions on a claimed sparse set; throws naming the first
// violated conclusion. The cardinality bound only applies to full-mode sets.
void verify_sparse_set(const MultiGraph& g, const SparseSet& u, bool check_cardinality);

struct DeleteMatchOptions {
    // Pair the one leftover neighbor per star across stars (odd d). The
    // cycle-free post-verification still runs and gates the result.
    bool cross_star = false;
};

struct DeleteMatchResult {
    MultiGraph graph;
    std::vector<std::pair<Vertex, Vertex>> matching;  // new labels
    std::vector<Vertex> old_of_new;
};

// Deletes the vertices of U and pairs each deleted vertex's neighbors among
// themselves (sorted order, consecutive pairs). Verifies that the r-ball of
// every added matching edge in the result is cycle-free.
DeleteMatchResult delete_and_match(const MultiGraph& h, const SparseSet& u,
                                   const DeleteMatchOptions& opts = {});

struct TrimOptions {
    bool relaxed_sparse_set = false;
    EigOptions eig;  // for the lambda(base) measurement in the bound report
};

struct TrimResult {
    MultiGraph graph;
    int32_t r = 0;
    int64_t u_count = 0;
    double lambda_base = 0.0;
    double bound = 0.0;  // lambda_base + 1/r
    BoundParams bound_params;
    SparseSet sparse_set;
};

// Thm 1.3 pipeline on an LPS base: build LPS(base_p, base_q), find a sparse
// set of size base_n - n, delete and rematch. Requires nd even.
TrimResult trim_to_exact(int64_t n, int32_t d, double epsilon, int64_t base_p,
                         int64_t base_q, const TrimOptions& opts = {});

}  // namespace expander
