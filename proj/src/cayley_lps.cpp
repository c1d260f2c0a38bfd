#include "expander/cayley_lps.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "expander/errors.hpp"
#include "expander/graph_algorithms.hpp"
#include "expander/number_theory.hpp"

namespace expander {

int64_t psl2_size(int64_t q) { return q * (q * q - 1) / 2; }

ProjMat canonical(int64_t a11, int64_t a12, int64_t a21, int64_t a22, int64_t q) {
    auto red = [q](int64_t x) {
        x %= q;
        return x < 0 ? x + q : x;
    };
    a11 = red(a11);
    a12 = red(a12);
    a21 = red(a21);
    a22 = red(a22);
    int64_t det = red(a11 * a22 - a12 * a21);
    if (det != 1)
        throw precondition_error("matrix determinant is " + std::to_string(det) +
                                 " mod " + std::to_string(q) + ", expected 1");
    int64_t half = (q - 1) / 2;
    bool flip;
    if (a11 != 0)
        flip = a11 > half;
    else
        flip = a12 > half;  // det = -a12*a21 = 1 forces a12 != 0
    if (flip) {
        a11 = a11 == 0 ? 0 : q - a11;
        a12 = a12 == 0 ? 0 : q - a12;
        a21 = a21 == 0 ? 0 : q - a21;
        a22 = a22 == 0 ? 0 : q - a22;
    }
    return ProjMat{a11, a12, a21, a22, q};
}

ProjMat mul(const ProjMat& a, const ProjMat& b) {
    int64_t q = a.q;
    return canonical(a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
                     a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22, q);
}

ProjMat inverse(const ProjMat& a) {
    // det = 1, so the adjugate is the inverse.
    return canonical(a.a22, -a.a12, -a.a21, a.a11, a.q);
}

int64_t index_of(const ProjMat& m) {
    int64_t q = m.q;
    if (m.a11 != 0) return ((m.a11 - 1) * q + m.a12) * q + m.a21;
    int64_t first_block = (q - 1) / 2 * q * q;
    return first_block + (m.a12 - 1) * q + m.a22;
}

ProjMat mat_of_index(int64_t i, int64_t q) {
    if (i < 0 || i >= psl2_size(q))
        throw precondition_error("PSL(2," + std::to_string(q) + ") index " +
                                 std::to_string(i) + " out of range");
    int64_t first_block = (q - 1) / 2 * q * q;
    if (i < first_block) {
        int64_t a11 = 1 + i / (q * q);
        int64_t rem = i % (q * q);
        int64_t a12 = rem / q;
        int64_t a21 = rem % q;
        int64_t a22 = (1 + a12 * a21) % q * inv_mod(a11, q) % q;
        return ProjMat{a11, a12, a21, a22, q};
    }
    int64_t j = i - first_block;
    int64_t a12 = 1 + j / q;
    int64_t a22 = j % q;
    int64_t a21 = q - inv_mod(a12, q);  // -a12^{-1}, so det = -a12*a21 = 1
    return ProjMat{0, a12, a21, a22, q};
}

std::vector<ProjMat> lps_generators(int64_t p, int64_t q) {
    if (!is_prime(p) || p % 4 != 1)
        throw precondition_error("lps_generators: p must be prime, 1 mod 4 (p=" +
                                 std::to_string(p) + ")");
    if (!is_prime(q) || q % 4 != 1)
        throw precondition_error("lps_generators: q must be prime, 1 mod 4 (q=" +
                                 std::to_string(q) + ")");
    if (p == q) throw precondition_error("lps_generators: p and q must be distinct");
    if (legendre(p, q) != 1)
        throw precondition_error("lps_generators: legendre(" + std::to_string(p) + "," +
                                 std::to_string(q) + ") = -1, p must be a residue mod q");

    // iota^2 = -1; the smaller root keeps the output reproducible.
    int64_t iota = sqrt_mod(q - 1, q);
    // The four-square matrices have determinant p; rescaling by the inverse
    // root of p lands them in SL(2, F_q).
    int64_t w_inv = inv_mod(sqrt_mod(p, q), q);

    std::vector<ProjMat> gens;
    gens.reserve(static_cast<size_t>(p + 1));
    for (const auto& r : four_square_reps(p)) {
        int64_t m11 = r.a0 + iota * r.a1;
        int64_t m12 = r.a2 + iota * r.a3;
        int64_t m21 = -r.a2 + iota * r.a3;
        int64_t m22 = r.a0 - iota * r.a1;
        gens.push_back(canonical(m11 * w_inv, m12 * w_inv, m21 * w_inv, m22 * w_inv, q));
    }

    std::set<ProjMat> distinct(gens.begin(), gens.end());
    if (distinct.size() != gens.size())
        throw internal_error("LPS generator set for (p=" + std::to_string(p) + ", q=" +
                             std::to_string(q) + ") has collisions");
    for (const auto& g : gens)
        if (!distinct.count(inverse(g)))
            throw internal_error("LPS generator set is not closed under inverse");
    return gens;
}

MultiGraph build_cayley_psl(int64_t q, std::span<const ProjMat> generators) {
    int64_t n64 = psl2_size(q);
    if (n64 > (int64_t{1} << 31) - 1)
        throw precondition_error("PSL(2," + std::to_string(q) + ") is too large");
    Vertex n = static_cast<Vertex>(n64);
    int32_t d = static_cast<int32_t>(generators.size());
    std::vector<std::vector<Vertex>> rows(static_cast<size_t>(n));
    std::vector<int32_t> loops(static_cast<size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) {
        ProjMat x = mat_of_index(v, q);
        auto& row = rows[static_cast<size_t>(v)];
        row.reserve(generators.size());
        for (const auto& g : generators) {
            Vertex target = static_cast<Vertex>(index_of(mul(x, g)));
            if (target == v)
                ++loops[static_cast<size_t>(v)];  // generator equal to the identity
            else
                row.push_back(target);
        }
    }
    return graph_from_rows(n, d, std::move(rows), std::move(loops));
}

MultiGraph build_lps(int64_t p, int64_t q) {
    auto gens = lps_generators(p, q);
    MultiGraph g = build_cayley_psl(q, gens);
    if (!is_connected(g))
        throw internal_error("LPS graph (p=" + std::to_string(p) + ", q=" +
                             std::to_string(q) + ") came out disconnected");
    if (is_bipartite(g))
        throw internal_error("LPS graph (p=" + std::to_string(p) + ", q=" +
                             std::to_string(q) + ") came out bipartite");
    return g;
}

}  // namespace expander
