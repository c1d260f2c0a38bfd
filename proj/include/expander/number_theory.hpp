#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace expander {

int64_t mul_mod(int64_t a, int64_t b, int64_t m);
int64_t pow_mod(int64_t base, int64_t exp, int64_t m);
// Inverse of a modulo m (any m > 1 with gcd(a, m) = 1).
int64_t inv_mod(int64_t a, int64_t m);
int64_t gcd64(int64_t a, int64_t b);

// Deterministic Miller-Rabin with a witness set valid for all 64-bit inputs.
bool is_prime(int64_t n);

std::optional<int64_t> largest_prime_1mod4_leq(int64_t x);

// Legendre symbol (a|q) in {-1, 0, +1}; q must be an odd prime.
int legendre(int64_t a, int64_t q);

// Tonelli-Shanks; returns the smaller of the two square roots of a mod q.
// Requires legendre(a, q) = 1.
int64_t sqrt_mod(int64_t a, int64_t q);

// One of Jacobi's integral representations a0^2+a1^2+a2^2+a3^2 = p with a0
// odd positive and a1, a2, a3 even (possibly negative).
struct FourSquareRep {
    int64_t a0, a1, a2, a3;
    bool operator==(const FourSquareRep&) const = default;
};

// The complete set A(p) for p prime, p = 1 mod 4; exactly p+1 elements.
std::vector<FourSquareRep> four_square_reps(int64_t p);

// Largest prime q = 1 mod 4 with legendre(p,q) = 1 and q(q^2-1)/2 <= n_cap.
std::optional<int64_t> find_q_lps(int64_t p, int64_t n_cap);

// The two smallest distinct primes q = 1 mod 4*prod(p_i). Every p_i is then a
// quadratic residue mod q. Search is capped; exhaustion raises an error.
std::pair<int64_t, int64_t> find_qpair(const std::vector<int64_t>& p_list,
                                       int64_t search_cap = int64_t{1} << 40);

// CRT helpers for a two-part modulus m = m1*m2 with gcd(m1,m2) = 1.
std::pair<int64_t, int64_t> crt_split(int64_t x, int64_t m1, int64_t m2);
int64_t crt_join(int64_t r1, int64_t r2, int64_t m1, int64_t m2);

}  // namespace expander
