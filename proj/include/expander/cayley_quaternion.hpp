#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "expander/multigraph.hpp"

namespace expander {

// Odd modulus with its prime-power factorization (one or two distinct primes).
struct FactoredModulus {
    struct PrimePower {
        int64_t q;
        int32_t e;
        int64_t qe;  // q^e
    };
    int64_t m = 1;
    std::vector<PrimePower> factors;
};

FactoredModulus make_modulus(int64_t q1, int32_t s, int64_t q2, int32_t t);
FactoredModulus make_modulus(int64_t q, int32_t s);
// Trial-division factorization; rejects moduli that are not a product of one
// or two odd prime powers.
FactoredModulus factor_modulus(int64_t m);

using QuatTuple = std::array<int64_t, 4>;  // x0 + x1 i + x2 j + x3 k, mod m

// Hamilton product mod m.
QuatTuple quat_mul(const QuatTuple& a, const QuatTuple& b, int64_t m);
QuatTuple quat_conjugate(const QuatTuple& a, int64_t m);
int64_t quat_norm(const QuatTuple& a, int64_t m);

// Element of Q(m): a quaternion with square-unit norm, modulo unit scalars.
// The stored tuple is canonical: per prime-power factor of m, the first
// coordinate not divisible by that prime equals 1.
struct QuatClass {
    QuatTuple x{1, 0, 0, 0};
    int64_t m = 1;
    bool operator==(const QuatClass&) const = default;
    auto operator<=>(const QuatClass&) const = default;
};

// Requires norm(x) to be a square unit mod m (checked per prime factor).
QuatClass canonicalize(const QuatTuple& x, const FactoredModulus& fm);

// |Q(q1^s q2^t)| by the counting formula.
int64_t q_size(int64_t q1, int64_t q2, int32_t s, int32_t t);
int64_t q_size_of(const FactoredModulus& fm);

// Smallest Q(q1,q2,s,t) >= n; ties broken by smaller s.
std::pair<int32_t, int32_t> choose_exponents(int64_t n, int64_t q1, int64_t q2);
// Largest Q(q1,q2,s,t) <= n, if any.
std::optional<std::pair<int32_t, int32_t>> choose_exponents_below(int64_t n, int64_t q1,
                                                                  int64_t q2);

// All canonical classes, lexicographically sorted. Count equals q_size_of.
std::vector<QuatClass> enumerate_classes(const FactoredModulus& fm);

// The strongly explicit partial numbering: tuples (1, x1, x2, x3) with every
// x_i divisible by the product of the prime factors, in lexicographic order.
struct PartialNumbering {
    int64_t m = 1;
    int64_t step = 1;   // product of the distinct prime factors
    int64_t side = 1;   // m / step
    int64_t count = 1;  // side^3

    QuatClass class_at(int64_t index) const;
    std::optional<int64_t> index_of(const QuatClass& c) const;
};
PartialNumbering partial_numbering(const FactoredModulus& fm);

// Cayley graph of Q(m) for an arbitrary inverse-closed generator multiset,
// on the lexicographic enumerate_classes numbering.
MultiGraph build_cayley_quaternion(const FactoredModulus& fm,
                                   std::span<const QuatClass> generators);

// Generator classes of H(p, m): the A(p) quaternions reduced mod m.
std::vector<QuatClass> quaternion_generators(int64_t p, const FactoredModulus& fm);

// The (p+1)-regular Ramanujan graph H(p, m); verified connected and
// non-bipartite. Requires m odd, gcd(p, m) = 1, and p a square mod every
// prime factor of m.
MultiGraph build_quaternion(int64_t p, const FactoredModulus& fm);

}  // namespace expander
