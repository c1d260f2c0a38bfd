#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expander/multigraph.hpp"

namespace expander {

// y = A x where A is the adjacency matrix; a loop contributes 1 to the
// diagonal of its vertex.
std::vector<double> apply_adjacency(const MultiGraph& g, std::span<const double> x);

struct EigOptions {
    double tolerance = 1e-8;
    int64_t max_iterations = 100000;
    Vertex dense_threshold = 4096;
    uint64_t seed = 1;
    bool force_iterative = false;
    bool force_dense = false;
    // Skip the connectivity precondition and still exclude exactly one
    // eigenvalue d (used when measuring union blocks, which may be
    // disconnected).
    bool allow_disconnected = false;
};

struct EigResult {
    double lambda = 0.0;            // max |nontrivial eigenvalue|
    std::vector<double> witness;    // unit eigenvector attaining lambda
    double witness_value = 0.0;     // signed eigenvalue of the witness
    std::string method;             // "dense-exact" or "iterative"
    double residual = 0.0;          // ||A f - mu f||
    int64_t iterations = 0;
};

// Largest nontrivial absolute eigenvalue. Dense path: full symmetric
// eigendecomposition (n <= dense_threshold). Iterative path: power iteration
// on (A + dI) and (dI - A), deflated against the all-ones vector by
// re-orthogonalization every step.
EigResult max_nontrivial_abs_eig(const MultiGraph& g, const EigOptions& opts = {});

enum class BoundKind { ramanujan, thm12, pack_union, trim };

std::string bound_kind_name(BoundKind k);

struct BoundParams {
    BoundKind kind = BoundKind::ramanujan;
    // thm12: target degree is p+2 on a base with m vertices and r_new added.
    int64_t p = 0;
    int64_t r_new = 0;
    int64_t m_base = 0;
    // pack_union
    std::vector<int64_t> primes;
    int32_t arbitrary_pairs = 0;
    int32_t involutions = 0;
    // trim
    double lambda_base = 0.0;
    int32_t r = 0;
};

// The certified threshold: ramanujan 2*sqrt(d-1); thm12
// sqrt(2p+2)+sqrt(p)+(r_new/m)(p+2); pack-union sum 2*sqrt(p_i) + 2 per
// arbitrary pair + 1 per involution; trim lambda_base + 1/r.
double bound_value(const BoundParams& params, int32_t d);

struct CertifyOptions {
    EigOptions eig;
    double tol_dense = 1e-9;
    double tol_iterative = 1e-6;
};

struct SpectralCertificate {
    int64_t n = 0;
    int64_t d = 0;
    double lambda = 0.0;
    std::string method;
    double residual = 0.0;  // ||A f - lambda f|| / d
    int64_t iterations = 0;
    std::string bound_kind;
    double bound_value = 0.0;
    bool pass = false;
    bool heuristic = false;  // iterative lambdas are lower-bound evidence only
};

SpectralCertificate certify(const MultiGraph& g, const BoundParams& params,
                            const CertifyOptions& opts = {});

// Single-object JSON, keys in declaration order, floats at 17 significant
// digits.
void write_certificate(std::ostream& out, const SpectralCertificate& cert);
std::string certificate_json(const SpectralCertificate& cert);

// Layer masses S_i = sum of f^2 over vertices at distance exactly i from the
// edge (u,v), with the monotonicity checks of the delocalization lemma.
struct DelocalizationProfile {
    std::vector<double> layer_mass;  // S_0 .. S_r
    double mu = 0.0;
    double residual = 0.0;      // ||A f - mu f||
    double slack = 0.0;         // 10 * residual * ||f||^2
    bool monotone = false;      // S_i >= S_{i-1} - slack for 1 <= i <= r
    bool strengthened = false;  // S_1 >= ((3d-4)/d) S_0 - slack
};

// Requires the r-ball of (u,v) to be cycle-free, mu >= 2*sqrt(d-1), and f to
// be an eigenvector up to solver residual.
DelocalizationProfile delocalization_profile(const MultiGraph& g, Vertex u, Vertex v,
                                             int32_t r, std::span<const double> f,
                                             double mu);

struct UnionBoundReport {
    std::vector<double> lambdas;
    double lambda_union = 0.0;
    double bound = 0.0;  // sum of block lambdas + tolerance
    bool pass = false;
};

// Measures each block and their edge-union multigraph; checks
// lambda(union) <= sum lambda_i + tolerance.
UnionBoundReport union_bound_check(std::span<const MultiGraph> blocks,
                                   double tolerance = 1e-6,
                                   const EigOptions& opts = {});

// Edge-union of graphs on a common vertex set.
MultiGraph union_graph(std::span<const MultiGraph> blocks);

}  // namespace expander
