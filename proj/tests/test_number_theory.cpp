#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "expander/errors.hpp"
#include "expander/number_theory.hpp"

using namespace expander;

namespace {

// Trial-division oracle for cross-checking the deterministic Miller-Rabin.
bool is_prime_slow(int64_t n) {
    if (n < 2) return false;
    for (int64_t k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

// Oracle: enumerate all squares mod q.
std::set<int64_t> squares_mod(int64_t q) {
    std::set<int64_t> s;
    for (int64_t x = 1; x < q; ++x) s.insert(x * x % q);
    return s;
}

}  // namespace

TEST_CASE("is_prime on small values and Carmichael numbers") {
    CHECK(is_prime(13));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(561));   // 3 * 11 * 17
    CHECK_FALSE(is_prime(6601));  // Carmichael
    CHECK(is_prime(2147483647));
    for (int64_t n = 0; n < 5000; ++n) CHECK(is_prime(n) == is_prime_slow(n));
}

TEST_CASE("largest_prime_1mod4_leq") {
    CHECK(largest_prime_1mod4_leq(20) == 17);
    CHECK(largest_prime_1mod4_leq(13) == 13);
    CHECK_FALSE(largest_prime_1mod4_leq(4).has_value());
    CHECK(largest_prime_1mod4_leq(5) == 5);
    CHECK(largest_prime_1mod4_leq(100) == 97);
}

TEST_CASE("legendre symbol against square enumeration") {
    CHECK(legendre(1, 7) == 1);
    CHECK(legendre(1, 29) == 1);
    CHECK(legendre(5, 29) == 1);   // 11^2 = 121 = 5 mod 29
    CHECK(legendre(5, 37) == -1);
    CHECK(legendre(0, 13) == 0);
    CHECK(legendre(26, 13) == 0);
    for (int64_t q : {5, 13, 17, 29, 37}) {
        auto sq = squares_mod(q);
        for (int64_t a = 1; a < q; ++a)
            CHECK(legendre(a, q) == (sq.count(a) ? 1 : -1));
    }
    CHECK_THROWS_AS(legendre(3, 15), precondition_error);
    CHECK_THROWS_AS(legendre(3, 2), precondition_error);
}

TEST_CASE("legendre is multiplicative") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int64_t q = 101;
        int64_t a = static_cast<int64_t>(rng() % 1000) + 1;
        int64_t b = static_cast<int64_t>(rng() % 1000) + 1;
        CHECK(legendre(a, q) * legendre(b, q) == legendre(a * b, q));
    }
}

TEST_CASE("sqrt_mod returns the smaller root") {
    CHECK(sqrt_mod(1, 13) == 1);
    CHECK(sqrt_mod(13, 17) == 8);  // 8^2 = 64 = 13 mod 17
    CHECK(sqrt_mod(5, 29) == 11);  // 11^2 = 121 = 5 mod 29
    for (int64_t q : {13, 17, 29, 97, 193}) {  // 193 has q-1 divisible by 2^6
        for (int64_t a = 1; a < q; ++a) {
            if (legendre(a, q) != 1) continue;
            int64_t s = sqrt_mod(a, q);
            CHECK(s * s % q == a);
            CHECK(s <= q - s);
        }
    }
    CHECK_THROWS_AS(sqrt_mod(5, 13), precondition_error);
}

TEST_CASE("four square representations of small primes") {
    auto reps5 = four_square_reps(5);
    CHECK(reps5.size() == 6);
    std::set<std::array<int64_t, 4>> got;
    for (const auto& r : reps5) got.insert({r.a0, r.a1, r.a2, r.a3});
    std::set<std::array<int64_t, 4>> want = {
        {1, 2, 0, 0}, {1, -2, 0, 0}, {1, 0, 2, 0}, {1, 0, -2, 0}, {1, 0, 0, 2}, {1, 0, 0, -2}};
    CHECK(got == want);

    auto reps13 = four_square_reps(13);
    CHECK(reps13.size() == 14);
    int shape_1222 = 0, shape_3200 = 0;
    for (const auto& r : reps13) {
        if (r.a0 == 1) ++shape_1222;  // (1, +-2, +-2, +-2)
        if (r.a0 == 3) ++shape_3200;  // (3, +-2, 0, 0) permutations
    }
    CHECK(shape_1222 == 8);
    CHECK(shape_3200 == 6);

    auto reps17 = four_square_reps(17);
    CHECK(reps17.size() == 18);
    int shape_1400 = 0, shape_3220 = 0;
    for (const auto& r : reps17) {
        if (r.a0 == 1) ++shape_1400;
        if (r.a0 == 3) ++shape_3220;
    }
    CHECK(shape_1400 == 6);
    CHECK(shape_3220 == 12);
}

TEST_CASE("four square counts and invariants") {
    for (int64_t p : {5, 13, 17, 29, 37, 41}) {
        auto reps = four_square_reps(p);
        CHECK(static_cast<int64_t>(reps.size()) == p + 1);
        std::set<std::array<int64_t, 4>> all;
        for (const auto& r : reps) {
            CHECK(r.a0 > 0);
            CHECK(r.a0 % 2 == 1);
            CHECK(r.a1 % 2 == 0);
            CHECK(r.a2 % 2 == 0);
            CHECK(r.a3 % 2 == 0);
            CHECK(r.a0 * r.a0 + r.a1 * r.a1 + r.a2 * r.a2 + r.a3 * r.a3 == p);
            all.insert({r.a0, r.a1, r.a2, r.a3});
        }
        CHECK(all.size() == reps.size());
        // Closure under negating any subset of (a1, a2, a3).
        for (const auto& r : reps)
            for (int mask = 0; mask < 8; ++mask)
                CHECK(all.count({r.a0, (mask & 1) ? -r.a1 : r.a1, (mask & 2) ? -r.a2 : r.a2,
                                 (mask & 4) ? -r.a3 : r.a3}) == 1);
    }
    CHECK_THROWS_AS(four_square_reps(7), precondition_error);  // 7 = 3 mod 4
}

TEST_CASE("find_q_lps picks the largest admissible base prime") {
    CHECK(find_q_lps(13, 2500) == 17);   // 17*288/2 = 2448
    CHECK(find_q_lps(5, 13000) == 29);   // 29*840/2 = 12180; 37 gives 25308
    CHECK_FALSE(find_q_lps(5, 59).has_value());
    CHECK_FALSE(find_q_lps(5, 60).has_value());  // only q=5 fits, but q=p is excluded
    CHECK(find_q_lps(29, 60) == 5);              // 29 = 4 = 2^2 mod 5
}

TEST_CASE("find_qpair scans the arithmetic progression 1 mod 4*prod") {
    CHECK(find_qpair({5}) == std::pair<int64_t, int64_t>{41, 61});
    CHECK(find_qpair({13}) == std::pair<int64_t, int64_t>{53, 157});
    CHECK(find_qpair({5, 13}) == std::pair<int64_t, int64_t>{521, 1301});
    for (int64_t p : {5, 13}) {
        auto [a, b] = find_qpair({p});
        CHECK(legendre(p, a) == 1);
        CHECK(legendre(p, b) == 1);
    }
    auto [a, b] = find_qpair({5, 13});
    CHECK(legendre(5, a) == 1);
    CHECK(legendre(13, a) == 1);
    CHECK(legendre(5, b) == 1);
    CHECK(legendre(13, b) == 1);
    CHECK_THROWS_AS(find_qpair({5, 5}), precondition_error);
    CHECK_THROWS_AS(find_qpair({7}), precondition_error);
}

TEST_CASE("crt split and join") {
    CHECK(crt_split(0, 5, 13) == std::pair<int64_t, int64_t>{0, 0});
    CHECK(crt_split(14, 5, 13) == std::pair<int64_t, int64_t>{4, 1});
    CHECK(crt_join(4, 1, 5, 13) == 14);
    for (int64_t x = 0; x < 65; ++x) {
        auto [r1, r2] = crt_split(x, 5, 13);
        CHECK(crt_join(r1, r2, 5, 13) == x);
    }
    for (int64_t x = 0; x < 325; ++x) {
        auto [r1, r2] = crt_split(x, 25, 13);
        CHECK(crt_join(r1, r2, 25, 13) == x);
    }
}
