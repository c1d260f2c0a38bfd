#include "expander/cayley_quaternion.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "expander/errors.hpp"
#include "expander/graph_algorithms.hpp"
#include "expander/number_theory.hpp"

namespace expander {

namespace {

int64_t ipow(int64_t b, int32_t e) {
    int64_t r = 1;
    for (int32_t i = 0; i < e; ++i) {
        if (r > (int64_t{1} << 62) / b)
            throw precondition_error("prime power overflows 64 bits");
        r *= b;
    }
    return r;
}

void check_prime_power(int64_t q, int32_t e) {
    if (!is_prime(q) || q % 2 == 0)
        throw precondition_error("modulus factor " + std::to_string(q) +
                                 " must be an odd prime");
    if (e < 1) throw precondition_error("modulus exponent must be >= 1");
}

}  // namespace

FactoredModulus make_modulus(int64_t q1, int32_t s, int64_t q2, int32_t t) {
    check_prime_power(q1, s);
    check_prime_power(q2, t);
    if (q1 == q2) throw precondition_error("modulus primes must be distinct");
    FactoredModulus fm;
    fm.factors.push_back({q1, s, ipow(q1, s)});
    fm.factors.push_back({q2, t, ipow(q2, t)});
    fm.m = fm.factors[0].qe * fm.factors[1].qe;
    return fm;
}

FactoredModulus make_modulus(int64_t q, int32_t s) {
    check_prime_power(q, s);
    FactoredModulus fm;
    fm.factors.push_back({q, s, ipow(q, s)});
    fm.m = fm.factors[0].qe;
    return fm;
}

FactoredModulus factor_modulus(int64_t m) {
    if (m < 3 || m % 2 == 0) throw precondition_error("modulus must be odd and >= 3");
    FactoredModulus fm;
    fm.m = m;
    int64_t rest = m;
    for (int64_t q = 3; q * q <= rest; q += 2) {
        if (rest % q != 0) continue;
        int32_t e = 0;
        while (rest % q == 0) {
            rest /= q;
            ++e;
        }
        fm.factors.push_back({q, e, ipow(q, e)});
    }
    if (rest > 1) fm.factors.push_back({rest, 1, rest});
    if (fm.factors.size() > 2)
        throw precondition_error("modulus " + std::to_string(m) +
                                 " has more than two distinct prime factors");
    return fm;
}

QuatTuple quat_mul(const QuatTuple& a, const QuatTuple& b, int64_t m) {
    auto red = [m](int64_t x) {
        x %= m;
        return x < 0 ? x + m : x;
    };
    return {red(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]),
            red(a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2]),
            red(a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1]),
            red(a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0])};
}

QuatTuple quat_conjugate(const QuatTuple& a, int64_t m) {
    auto neg = [m](int64_t x) {
        x %= m;
        return x == 0 ? 0 : (x < 0 ? -x : m - x);
    };
    int64_t a0 = a[0] % m;
    if (a0 < 0) a0 += m;
    return {a0, neg(a[1]), neg(a[2]), neg(a[3])};
}

int64_t quat_norm(const QuatTuple& a, int64_t m) {
    int64_t s = 0;
    for (int64_t c : a) s = (s + mul_mod(c, c, m)) % m;
    return s < 0 ? s + m : s;
}

QuatClass canonicalize(const QuatTuple& x, const FactoredModulus& fm) {
    // Norm must be a unit square per prime factor (Hensel reduces prime
    // powers to the prime itself).
    for (const auto& f : fm.factors) {
        int64_t nq = quat_norm(x, fm.m) % f.q;
        if (nq == 0 || legendre(nq, f.q) != 1)
            throw precondition_error("quaternion norm is not a square unit mod " +
                                     std::to_string(f.q));
    }
    QuatTuple joined{0, 0, 0, 0};
    std::array<int64_t, 4> component{};
    for (const auto& f : fm.factors) {
        for (int i = 0; i < 4; ++i) {
            int64_t c = x[static_cast<size_t>(i)] % f.qe;
            component[static_cast<size_t>(i)] = c < 0 ? c + f.qe : c;
        }
        int pivot = -1;
        for (int i = 0; i < 4; ++i) {
            if (component[static_cast<size_t>(i)] % f.q != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) throw internal_error("square-unit norm but no unit coordinate");
        int64_t scale = inv_mod(component[static_cast<size_t>(pivot)], f.qe);
        for (int i = 0; i < 4; ++i)
            component[static_cast<size_t>(i)] =
                mul_mod(component[static_cast<size_t>(i)], scale, f.qe);
        if (fm.factors.size() == 1) {
            joined = component;
        } else {
            // Accumulate via CRT across the two factors.
            for (int i = 0; i < 4; ++i) {
                if (&f == &fm.factors[0])
                    joined[static_cast<size_t>(i)] = component[static_cast<size_t>(i)];
                else
                    joined[static_cast<size_t>(i)] =
                        crt_join(joined[static_cast<size_t>(i)],
                                 component[static_cast<size_t>(i)], fm.factors[0].qe, f.qe);
            }
        }
    }
    return QuatClass{joined, fm.m};
}

int64_t q_size(int64_t q1, int64_t q2, int32_t s, int32_t t) {
    auto fm = make_modulus(q1, s, q2, t);
    return q_size_of(fm);
}

int64_t q_size_of(const FactoredModulus& fm) {
    const __int128 cap = __int128{1} << 62;
    __int128 total = 1;
    for (const auto& f : fm.factors) {
        __int128 part = 1;
        for (int32_t i = 0; i < 3 * (f.e - 1); ++i) {
            part *= f.q;
            if (part > cap) throw precondition_error("q_size overflows 64 bits");
        }
        part *= f.q;
        part *= f.q - 1;
        part *= f.q + 1;
        part /= 2;
        total *= part;
        if (total > cap) throw precondition_error("q_size overflows 64 bits");
    }
    return static_cast<int64_t>(total);
}

std::pair<int32_t, int32_t> choose_exponents(int64_t n, int64_t q1, int64_t q2) {
    if (n < 1) n = 1;
    std::optional<std::pair<int32_t, int32_t>> best;
    int64_t best_q = 0;
    for (int32_t s = 1; s < 64; ++s) {
        bool s_overflow = false;
        for (int32_t t = 1; t < 64; ++t) {
            int64_t q;
            try {
                q = q_size(q1, q2, s, t);
            } catch (const precondition_error&) {
                s_overflow = (t == 1);
                break;
            }
            if (q >= n) {
                if (!best || q < best_q || (q == best_q && s < best->first)) {
                    best = {s, t};
                    best_q = q;
                }
                break;  // larger t only grows Q
            }
        }
        if (s_overflow) break;
        if (q_size(q1, q2, s, 1) >= n) break;  // larger s only grows Q(s,1)
    }
    if (!best) throw precondition_error("choose_exponents found no admissible (s,t)");
    return *best;
}

std::optional<std::pair<int32_t, int32_t>> choose_exponents_below(int64_t n, int64_t q1,
                                                                  int64_t q2) {
    std::optional<std::pair<int32_t, int32_t>> best;
    int64_t best_q = 0;
    for (int32_t s = 1; s < 64; ++s) {
        int64_t base;
        try {
            base = q_size(q1, q2, s, 1);
        } catch (const precondition_error&) {
            break;
        }
        if (base > n) break;
        for (int32_t t = 1; t < 64; ++t) {
            int64_t q;
            try {
                q = q_size(q1, q2, s, t);
            } catch (const precondition_error&) {
                break;
            }
            if (q > n) break;
            if (q > best_q) {
                best = {s, t};
                best_q = q;
            }
        }
    }
    return best;
}

namespace {

// Canonical class representatives modulo one prime power: the first
// coordinate not divisible by q is 1, earlier coordinates run over multiples
// of q, later ones over all residues; keep tuples with square-unit norm.
std::vector<QuatTuple> component_classes(const FactoredModulus::PrimePower& f) {
    std::vector<int8_t> is_sq(static_cast<size_t>(f.q), 0);
    for (int64_t u = 1; u < f.q; ++u) is_sq[static_cast<size_t>(mul_mod(u, u, f.q))] = 1;

    std::vector<QuatTuple> out;
    QuatTuple x{};
    for (int pivot = 0; pivot < 4; ++pivot) {
        // positions < pivot: multiples of q; position pivot: 1; rest: free.
        std::array<std::vector<int64_t>, 4> ranges;
        for (int i = 0; i < 4; ++i) {
            if (i < pivot) {
                for (int64_t v = 0; v < f.qe; v += f.q) ranges[static_cast<size_t>(i)].push_back(v);
            } else if (i == pivot) {
                ranges[static_cast<size_t>(i)].push_back(1);
            } else {
                for (int64_t v = 0; v < f.qe; ++v) ranges[static_cast<size_t>(i)].push_back(v);
            }
        }
        for (int64_t c0 : ranges[0])
            for (int64_t c1 : ranges[1])
                for (int64_t c2 : ranges[2])
                    for (int64_t c3 : ranges[3]) {
                        x = {c0, c1, c2, c3};
                        int64_t nq = quat_norm(x, f.qe) % f.q;
                        if (nq != 0 && is_sq[static_cast<size_t>(nq)]) out.push_back(x);
                    }
    }
    return out;
}

}  // namespace

std::vector<QuatClass> enumerate_classes(const FactoredModulus& fm) {
    std::vector<QuatClass> out;
    if (fm.factors.size() == 1) {
        for (const auto& t : component_classes(fm.factors[0])) out.push_back({t, fm.m});
    } else {
        auto c1 = component_classes(fm.factors[0]);
        auto c2 = component_classes(fm.factors[1]);
        out.reserve(c1.size() * c2.size());
        int64_t m1 = fm.factors[0].qe, m2 = fm.factors[1].qe;
        for (const auto& a : c1)
            for (const auto& b : c2) {
                QuatTuple t;
                for (int i = 0; i < 4; ++i)
                    t[static_cast<size_t>(i)] =
                        crt_join(a[static_cast<size_t>(i)], b[static_cast<size_t>(i)], m1, m2);
                out.push_back({t, fm.m});
            }
    }
    std::sort(out.begin(), out.end());
    int64_t expected = q_size_of(fm);
    if (static_cast<int64_t>(out.size()) != expected)
        throw internal_error("Q(m) enumeration produced " + std::to_string(out.size()) +
                             " classes for m=" + std::to_string(fm.m) + ", expected " +
                             std::to_string(expected));
    return out;
}

QuatClass PartialNumbering::class_at(int64_t index) const {
    if (index < 0 || index >= count)
        throw precondition_error("partial numbering index out of range");
    int64_t i1 = index / (side * side);
    int64_t i2 = index / side % side;
    int64_t i3 = index % side;
    return QuatClass{{1, i1 * step, i2 * step, i3 * step}, m};
}

std::optional<int64_t> PartialNumbering::index_of(const QuatClass& c) const {
    if (c.x[0] != 1) return std::nullopt;
    for (int i = 1; i < 4; ++i)
        if (c.x[static_cast<size_t>(i)] % step != 0) return std::nullopt;
    return (c.x[1] / step * side + c.x[2] / step) * side + c.x[3] / step;
}

PartialNumbering partial_numbering(const FactoredModulus& fm) {
    PartialNumbering pn;
    pn.m = fm.m;
    pn.step = 1;
    for (const auto& f : fm.factors) pn.step *= f.q;
    pn.side = fm.m / pn.step;
    pn.count = pn.side * pn.side * pn.side;
    return pn;
}

namespace {

struct TupleHash {
    size_t operator()(const QuatTuple& t) const {
        uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (int64_t v : t) {
            h ^= static_cast<uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<size_t>(h);
    }
};

}  // namespace

MultiGraph build_cayley_quaternion(const FactoredModulus& fm,
                                   std::span<const QuatClass> generators) {
    auto classes = enumerate_classes(fm);
    if (static_cast<int64_t>(classes.size()) > (int64_t{1} << 31) - 1)
        throw precondition_error("Q(m) is too large to materialize");
    Vertex n = static_cast<Vertex>(classes.size());
    std::unordered_map<QuatTuple, Vertex, TupleHash> index;
    index.reserve(classes.size() * 2);
    for (Vertex i = 0; i < n; ++i) index.emplace(classes[static_cast<size_t>(i)].x, i);

    int32_t d = static_cast<int32_t>(generators.size());
    std::vector<std::vector<Vertex>> rows(static_cast<size_t>(n));
    std::vector<int32_t> loops(static_cast<size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) {
        const QuatTuple& x = classes[static_cast<size_t>(v)].x;
        auto& row = rows[static_cast<size_t>(v)];
        row.reserve(generators.size());
        for (const auto& g : generators) {
            QuatClass target = canonicalize(quat_mul(x, g.x, fm.m), fm);
            auto it = index.find(target.x);
            if (it == index.end())
                throw internal_error("Cayley step left the enumerated class set");
            if (it->second == v)
                ++loops[static_cast<size_t>(v)];
            else
                row.push_back(it->second);
        }
    }
    return graph_from_rows(n, d, std::move(rows), std::move(loops));
}

std::vector<QuatClass> quaternion_generators(int64_t p, const FactoredModulus& fm) {
    if (!is_prime(p) || p % 4 != 1)
        throw precondition_error("quaternion generators need a prime p = 1 mod 4");
    for (const auto& f : fm.factors) {
        if (p % f.q == 0)
            throw precondition_error("p must be coprime to the modulus, but " +
                                     std::to_string(f.q) + " divides " + std::to_string(p));
        if (legendre(p, f.q) != 1)
            throw precondition_error("p=" + std::to_string(p) +
                                     " is not a square mod modulus factor " +
                                     std::to_string(f.q));
    }
    std::vector<QuatClass> gens;
    gens.reserve(static_cast<size_t>(p + 1));
    for (const auto& r : four_square_reps(p))
        gens.push_back(canonicalize({r.a0, r.a1, r.a2, r.a3}, fm));
    return gens;
}

MultiGraph build_quaternion(int64_t p, const FactoredModulus& fm) {
    auto gens = quaternion_generators(p, fm);
    MultiGraph g = build_cayley_quaternion(fm, gens);
    if (!is_connected(g))
        throw internal_error("H(p=" + std::to_string(p) + ", m=" + std::to_string(fm.m) +
                             ") came out disconnected");
    if (is_bipartite(g))
        throw internal_error("H(p=" + std::to_string(p) + ", m=" + std::to_string(fm.m) +
                             ") came out bipartite");
    return g;
}

}  // namespace expander
