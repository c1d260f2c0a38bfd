#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "expander/multigraph.hpp"

namespace expander {

// Element of PSL(2, F_q): a 2x2 determinant-1 matrix over F_q with A and -A
// identified. The stored representative is canonical: 1 <= a11 <= (q-1)/2,
// or a11 = 0 and 1 <= a12 <= (q-1)/2.
struct ProjMat {
    int64_t a11 = 1, a12 = 0, a21 = 0, a22 = 1;
    int64_t q = 0;
    bool operator==(const ProjMat&) const = default;
    auto operator<=>(const ProjMat&) const = default;
};

// Number of elements of PSL(2, F_q): q(q^2-1)/2.
int64_t psl2_size(int64_t q);

// Sign-normalizes a determinant-1 matrix (entries reduced mod q).
ProjMat canonical(int64_t a11, int64_t a12, int64_t a21, int64_t a22, int64_t q);

ProjMat mul(const ProjMat& a, const ProjMat& b);
ProjMat inverse(const ProjMat& a);

// Numbering bijection onto [0, q(q^2-1)/2). Matrices with a11 != 0 come
// first, ordered lexicographically by (a11, a12, a21) with a22 forced by the
// determinant; matrices with a11 = 0 come last, ordered by (a12, a22) with
// a21 = -a12^{-1} forced.
int64_t index_of(const ProjMat& m);
ProjMat mat_of_index(int64_t i, int64_t q);

// The p+1 LPS generators in PSL(2, F_q), built from A(p). Requires p, q
// distinct primes = 1 mod 4 with legendre(p, q) = 1. The returned list is
// duplicate-free and closed under inverse.
std::vector<ProjMat> lps_generators(int64_t p, int64_t q);

// Cayley graph of PSL(2, F_q) on the index_of numbering for an arbitrary
// inverse-closed generator multiset.
MultiGraph build_cayley_psl(int64_t q, std::span<const ProjMat> generators);

// The (p+1)-regular LPS Ramanujan graph; verified connected, non-bipartite.
MultiGraph build_lps(int64_t p, int64_t q);

}  // namespace expander
