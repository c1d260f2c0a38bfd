#include "expander/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expander/errors.hpp"

namespace expander {

int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>(static_cast<__int128>(a) * b % m);
}

int64_t pow_mod(int64_t base, int64_t exp, int64_t m) {
    if (m <= 0) throw precondition_error("pow_mod modulus must be positive");
    base %= m;
    if (base < 0) base += m;
    int64_t result = 1 % m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

int64_t gcd64(int64_t a, int64_t b) {
    while (b != 0) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

int64_t inv_mod(int64_t a, int64_t m) {
    a %= m;
    if (a < 0) a += m;
    // Extended Euclid; works for any modulus, not just primes.
    int64_t r0 = m, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        int64_t r2 = r0 - q * r1;
        int64_t s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1)
        throw precondition_error("no inverse of " + std::to_string(a) + " mod " +
                                 std::to_string(m));
    return s0 < 0 ? s0 + m : s0;
}

bool is_prime(int64_t n) {
    if (n < 0) throw precondition_error("is_prime expects a non-negative input");
    if (n < 2) return false;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    int64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set is deterministic for every n < 3.3 * 10^24.
    for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        int64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::optional<int64_t> largest_prime_1mod4_leq(int64_t x) {
    if (x < 5) return std::nullopt;
    int64_t q = x - ((x - 1) % 4);  // largest value <= x that is 1 mod 4
    for (; q >= 5; q -= 4)
        if (is_prime(q)) return q;
    return std::nullopt;
}

int legendre(int64_t a, int64_t q) {
    if (q < 3 || q % 2 == 0 || !is_prime(q))
        throw precondition_error("legendre symbol requires an odd prime modulus, got " +
                                 std::to_string(q));
    a %= q;
    if (a < 0) a += q;
    if (a == 0) return 0;
    int64_t e = pow_mod(a, (q - 1) / 2, q);
    if (e == 1) return 1;
    if (e == q - 1) return -1;
    throw internal_error("Euler criterion produced a non-unit value");
}

int64_t sqrt_mod(int64_t a, int64_t q) {
    if (legendre(a, q) != 1)
        throw precondition_error(std::to_string(a) + " is not a quadratic residue mod " +
                                 std::to_string(q));
    a %= q;
    if (a < 0) a += q;
    int64_t root;
    if (q % 4 == 3) {
        root = pow_mod(a, (q + 1) / 4, q);
    } else {
        // Tonelli-Shanks. q - 1 = s * 2^e with s odd.
        int64_t s = q - 1;
        int e = 0;
        while ((s & 1) == 0) {
            s >>= 1;
            ++e;
        }
        int64_t non_residue = 2;
        while (legendre(non_residue, q) != -1) ++non_residue;
        int64_t x = pow_mod(a, (s + 1) / 2, q);
        int64_t b = pow_mod(a, s, q);
        int64_t g = pow_mod(non_residue, s, q);
        int r = e;
        while (b != 1) {
            int m = 0;
            int64_t t = b;
            while (t != 1) {
                t = mul_mod(t, t, q);
                ++m;
            }
            int64_t gs = g;
            for (int i = 0; i < r - m - 1; ++i) gs = mul_mod(gs, gs, q);
            x = mul_mod(x, gs, q);
            g = mul_mod(gs, gs, q);
            b = mul_mod(b, g, q);
            r = m;
        }
        root = x;
    }
    return std::min(root, q - root);
}

std::vector<FourSquareRep> four_square_reps(int64_t p) {
    if (!is_prime(p) || p % 4 != 1)
        throw precondition_error("four_square_reps requires a prime p = 1 mod 4, got " +
                                 std::to_string(p));
    std::vector<FourSquareRep> reps;
    // Largest even t with t*t <= r.
    auto even_bound = [](int64_t r) {
        int64_t t = static_cast<int64_t>(std::sqrt(static_cast<double>(r))) + 1;
        while (t > 0 && t * t > r) --t;
        return t - (t % 2);
    };
    for (int64_t a0 = 1; a0 * a0 <= p; a0 += 2) {
        int64_t r0 = p - a0 * a0;
        int64_t b1 = even_bound(r0);
        for (int64_t a1 = -b1; a1 <= b1; a1 += 2) {
            int64_t r1 = r0 - a1 * a1;
            int64_t b2 = even_bound(r1);
            for (int64_t a2 = -b2; a2 <= b2; a2 += 2) {
                int64_t r2 = r1 - a2 * a2;
                int64_t b3 = even_bound(r2);
                for (int64_t a3 = -b3; a3 <= b3; a3 += 2) {
                    if (a3 * a3 == r2) reps.push_back({a0, a1, a2, a3});
                }
            }
        }
    }
    if (static_cast<int64_t>(reps.size()) != p + 1)
        throw internal_error("A(p) enumeration found " + std::to_string(reps.size()) +
                             " vectors for p=" + std::to_string(p) + ", expected " +
                             std::to_string(p + 1));
    return reps;
}

std::optional<int64_t> find_q_lps(int64_t p, int64_t n_cap) {
    if (!is_prime(p) || p % 4 != 1)
        throw precondition_error("find_q_lps requires a prime p = 1 mod 4");
    // Largest q with q(q^2-1)/2 <= n_cap; cube-root estimate then exact scan.
    int64_t hi = static_cast<int64_t>(std::cbrt(static_cast<double>(n_cap) * 2.0)) + 2;
    while (hi >= 3 && hi * (hi * hi - 1) / 2 > n_cap) --hi;
    for (int64_t q = hi - (hi - 1) % 4; q >= 5; q -= 4) {
        if (q == p) continue;
        if (is_prime(q) && legendre(p, q) == 1) return q;
    }
    return std::nullopt;
}

std::pair<int64_t, int64_t> find_qpair(const std::vector<int64_t>& p_list, int64_t search_cap) {
    if (p_list.empty()) throw precondition_error("find_qpair requires at least one prime");
    int64_t modulus = 4;
    for (size_t i = 0; i < p_list.size(); ++i) {
        int64_t p = p_list[i];
        if (!is_prime(p) || p % 4 != 1)
            throw precondition_error("find_qpair inputs must be primes = 1 mod 4, got " +
                                     std::to_string(p));
        for (size_t j = 0; j < i; ++j)
            if (p_list[j] == p)
                throw precondition_error("find_qpair inputs must be distinct");
        if (modulus > search_cap / p)
            throw precondition_error("find_qpair progression modulus exceeds the search cap");
        modulus *= p;
    }
    int64_t first = 0;
    for (int64_t q = modulus + 1; q <= search_cap; q += modulus) {
        if (!is_prime(q)) continue;
        if (first == 0) {
            first = q;
        } else {
            return {first, q};
        }
    }
    throw precondition_error("find_qpair exhausted the search cap " +
                             std::to_string(search_cap));
}

std::pair<int64_t, int64_t> crt_split(int64_t x, int64_t m1, int64_t m2) {
    if (m1 <= 0 || m2 <= 0 || gcd64(m1, m2) != 1)
        throw precondition_error("crt_split requires coprime positive moduli");
    int64_t r = x % (m1 * m2);
    if (r < 0) r += m1 * m2;
    return {r % m1, r % m2};
}

int64_t crt_join(int64_t r1, int64_t r2, int64_t m1, int64_t m2) {
    if (m1 <= 0 || m2 <= 0 || gcd64(m1, m2) != 1)
        throw precondition_error("crt_join requires coprime positive moduli");
    r1 %= m1;
    if (r1 < 0) r1 += m1;
    r2 %= m2;
    if (r2 < 0) r2 += m2;
    // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
    int64_t diff = (r2 - r1) % m2;
    if (diff < 0) diff += m2;
    int64_t k = mul_mod(diff, inv_mod(m1 % m2, m2), m2);
    return r1 + m1 * k;
}

}  // namespace expander
