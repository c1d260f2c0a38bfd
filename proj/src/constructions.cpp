#include "expander/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "expander/errors.hpp"
#include "expander/graph_algorithms.hpp"
#include "expander/number_theory.hpp"

namespace expander {

DegreeDecomposition greedy_decompose(int32_t d) {
    if (d < 3) throw precondition_error("degree must be >= 3");
    DegreeDecomposition dec;
    dec.d = d;
    int64_t rest = d;
    while (rest > 4) {
        auto p = largest_prime_1mod4_leq(rest - 1);
        if (!p) break;  // rest = 5: the smallest block p+1 = 6 does not fit
        dec.primes.push_back(*p);
        rest -= *p + 1;
    }
    dec.leftover = static_cast<int32_t>(rest);
    dec.supported = dec.leftover <= 4;
    return dec;
}

namespace {

// ---- leftover generator selection (PSL side) ----

bool psl_is_involution(const ProjMat& g, int64_t q) {
    ProjMat id{1, 0, 0, 1, q};
    return !(g == id) && mul(g, g) == id;
}

// First elements in numbering order that extend `used` by a fresh
// non-involution generator pair {g, g^-1}.
std::pair<ProjMat, ProjMat> psl_fresh_pair(int64_t q, std::set<ProjMat>& used) {
    ProjMat id{1, 0, 0, 1, q};
    for (int64_t i = 0; i < psl2_size(q); ++i) {
        ProjMat g = mat_of_index(i, q);
        if (g == id || psl_is_involution(g, q)) continue;
        ProjMat gi = inverse(g);
        if (used.count(g) || used.count(gi)) continue;
        used.insert(g);
        used.insert(gi);
        return {g, gi};
    }
    throw internal_error("no fresh generator pair exists in PSL(2," + std::to_string(q) + ")");
}

// ---- leftover generator selection (quaternion side) ----

bool quat_is_involution(const QuatClass& g, const FactoredModulus& fm,
                        const QuatClass& id) {
    if (g == id) return false;
    return canonicalize(quat_mul(g.x, g.x, fm.m), fm) == id;
}

QuatClass quat_class_inverse(const QuatClass& g, const FactoredModulus& fm) {
    // g * conj(g) = norm(g), a scalar, so the conjugate represents g^{-1}.
    return canonicalize(quat_conjugate(g.x, fm.m), fm);
}

std::pair<QuatClass, QuatClass> quat_fresh_pair(const std::vector<QuatClass>& classes,
                                                const FactoredModulus& fm,
                                                std::set<QuatClass>& used) {
    QuatClass id = canonicalize({1, 0, 0, 0}, fm);
    for (const auto& g : classes) {
        if (g == id || quat_is_involution(g, fm, id)) continue;
        QuatClass gi = quat_class_inverse(g, fm);
        if (used.count(g) || used.count(gi)) continue;
        used.insert(g);
        used.insert(gi);
        return {g, gi};
    }
    throw internal_error("no fresh generator pair exists in Q(" + std::to_string(fm.m) + ")");
}

// Conjugates a repeated prime's generating set until it is disjoint from
// everything already chosen. Bounded search over the group numbering.
std::vector<ProjMat> psl_conjugate_disjoint(const std::vector<ProjMat>& gens, int64_t q,
                                            const std::set<ProjMat>& used) {
    int64_t limit = std::min<int64_t>(psl2_size(q), 20000);
    for (int64_t i = 1; i < limit; ++i) {
        ProjMat h = mat_of_index(i, q);
        ProjMat hi = inverse(h);
        std::vector<ProjMat> conj;
        conj.reserve(gens.size());
        bool ok = true;
        for (const auto& g : gens) {
            ProjMat c = mul(mul(hi, g), h);
            if (used.count(c)) {
                ok = false;
                break;
            }
            conj.push_back(c);
        }
        if (ok) return conj;
    }
    throw precondition_error("could not conjugate a repeated generating set to disjointness"
                             " in PSL(2," + std::to_string(q) + ")");
}

std::vector<QuatClass> quat_conjugate_disjoint(const std::vector<QuatClass>& gens,
                                               const FactoredModulus& fm,
                                               const std::vector<QuatClass>& classes,
                                               const std::set<QuatClass>& used) {
    QuatClass id = canonicalize({1, 0, 0, 0}, fm);
    size_t limit = std::min<size_t>(classes.size(), 20000);
    for (size_t i = 0; i < limit; ++i) {
        const QuatClass& h = classes[i];
        if (h == id) continue;
        QuatClass hi = quat_class_inverse(h, fm);
        std::vector<QuatClass> conj;
        conj.reserve(gens.size());
        bool ok = true;
        for (const auto& g : gens) {
            QuatClass c = canonicalize(
                quat_mul(quat_mul(hi.x, g.x, fm.m), h.x, fm.m), fm);
            if (used.count(c)) {
                ok = false;
                break;
            }
            conj.push_back(c);
        }
        if (ok) return conj;
    }
    throw precondition_error("could not conjugate a repeated generating set to disjointness"
                             " in Q(" + std::to_string(fm.m) + ")");
}

int64_t auto_select_psl_q(const DegreeDecomposition& dec, int64_t target_n) {
    int64_t floor_n = std::max<int64_t>(target_n, 60);
    for (int64_t q = 5;; q += 4) {
        if (!is_prime(q)) continue;
        if (psl2_size(q) < floor_n) continue;
        bool ok = true;
        for (int64_t p : dec.primes)
            if (p == q || legendre(p, q) != 1) {
                ok = false;
                break;
            }
        if (ok) return q;
        if (q > 5000)
            throw precondition_error("no admissible PSL prime q found below 5000");
    }
}

}  // namespace

MultiGraph PackResult::block_graph(size_t block_index) const {
    const PackBlock& b = blocks.at(block_index);
    if (!b.psl_gens.empty()) return build_cayley_psl(q, b.psl_gens);
    return build_cayley_quaternion(modulus, b.quat_gens);
}

PackResult pack_cayley(int32_t d, const PackOptions& opts) {
    DegreeDecomposition dec = greedy_decompose(d);
    if (!dec.supported)
        throw precondition_error("degree " + std::to_string(d) +
                                 " decomposes with leftover " +
                                 std::to_string(dec.leftover) + " > 4; unsupported");

    PackResult result;
    result.decomposition = dec;
    result.bound_params.kind = BoundKind::pack_union;
    result.bound_params.primes = dec.primes;

    int32_t y = dec.leftover;
    int32_t pairs = y / 2;           // y=2: one pair; y=3: pair + M; y=4: two pairs
    bool involution = (y % 2) == 1;  // y=1 or y=3
    result.bound_params.arbitrary_pairs = pairs;
    result.bound_params.involutions = involution ? 1 : 0;

    if (opts.backend == Backend::psl) {
        int64_t q = opts.q != 0 ? opts.q : auto_select_psl_q(dec, opts.target_n);
        if (!is_prime(q) || q % 4 != 1)
            throw precondition_error("pack: q must be a prime = 1 mod 4, got " +
                                     std::to_string(q));
        for (int64_t p : dec.primes) {
            if (p == q) throw precondition_error("pack: q collides with block prime " +
                                                 std::to_string(p));
            if (legendre(p, q) != 1)
                throw precondition_error("pack: legendre(" + std::to_string(p) + "," +
                                         std::to_string(q) + ") != 1");
        }
        result.q = q;

        std::set<ProjMat> used;
        std::vector<ProjMat> all;
        for (int64_t p : dec.primes) {
            auto gens = lps_generators(p, q);
            bool repeated = std::any_of(gens.begin(), gens.end(),
                                        [&used](const ProjMat& g) { return used.count(g) > 0; });
            if (repeated) gens = psl_conjugate_disjoint(gens, q, used);
            PackBlock blk;
            blk.label = "lps p=" + std::to_string(p);
            blk.prime = p;
            blk.lambda_bound = 2.0 * std::sqrt(static_cast<double>(p));
            blk.psl_gens = gens;
            for (const auto& g : gens) used.insert(g);
            all.insert(all.end(), gens.begin(), gens.end());
            result.blocks.push_back(std::move(blk));
        }
        for (int32_t k = 0; k < pairs; ++k) {
            auto [g, gi] = psl_fresh_pair(q, used);
            PackBlock blk;
            blk.label = "pair";
            blk.lambda_bound = 2.0;
            blk.psl_gens = {g, gi};
            all.push_back(g);
            all.push_back(gi);
            result.blocks.push_back(std::move(blk));
        }
        if (involution) {
            ProjMat m = canonical(0, 1, -1, 0, q);
            PackBlock blk;
            blk.label = "involution";
            blk.lambda_bound = 1.0;
            blk.psl_gens = {m};
            all.push_back(m);
            result.blocks.push_back(std::move(blk));
        }
        if (opts.simple) {
            std::set<ProjMat> distinct(all.begin(), all.end());
            if (distinct.size() != all.size())
                throw precondition_error("pack: generating multiset has duplicates but "
                                         "simplicity was requested");
        }
        result.graph = build_cayley_psl(q, all);
    } else {
        int64_t q1 = opts.q1, q2 = opts.q2;
        if (q1 == 0 || q2 == 0) {
            auto qp = find_qpair(dec.primes);
            q1 = qp.first;
            q2 = qp.second;
        }
        int32_t s = opts.s, t = opts.t;
        if (s == 0 || t == 0) {
            auto st = choose_exponents(std::max<int64_t>(opts.target_n, 1), q1, q2);
            s = st.first;
            t = st.second;
        }
        FactoredModulus fm = make_modulus(q1, s, q2, t);
        for (int64_t p : dec.primes)
            for (const auto& f : fm.factors)
                if (p % f.q == 0 || legendre(p, f.q) != 1)
                    throw precondition_error("pack: p=" + std::to_string(p) +
                                             " is not a square unit mod " +
                                             std::to_string(f.q));
        result.modulus = fm;
        auto classes = enumerate_classes(fm);

        std::set<QuatClass> used;
        std::vector<QuatClass> all;
        for (int64_t p : dec.primes) {
            auto gens = quaternion_generators(p, fm);
            bool repeated = std::any_of(gens.begin(), gens.end(),
                                        [&used](const QuatClass& g) { return used.count(g) > 0; });
            if (repeated) gens = quat_conjugate_disjoint(gens, fm, classes, used);
            PackBlock blk;
            blk.label = "quaternion p=" + std::to_string(p);
            blk.prime = p;
            blk.lambda_bound = 2.0 * std::sqrt(static_cast<double>(p));
            blk.quat_gens = gens;
            for (const auto& g : gens) used.insert(g);
            all.insert(all.end(), gens.begin(), gens.end());
            result.blocks.push_back(std::move(blk));
        }
        for (int32_t k = 0; k < pairs; ++k) {
            auto [g, gi] = quat_fresh_pair(classes, fm, used);
            PackBlock blk;
            blk.label = "pair";
            blk.lambda_bound = 2.0;
            blk.quat_gens = {g, gi};
            all.push_back(g);
            all.push_back(gi);
            result.blocks.push_back(std::move(blk));
        }
        if (involution) {
            QuatClass m = canonicalize({0, 1, 0, 0}, fm);
            PackBlock blk;
            blk.label = "involution";
            blk.lambda_bound = 1.0;
            blk.quat_gens = {m};
            all.push_back(m);
            result.blocks.push_back(std::move(blk));
        }
        if (opts.simple) {
            std::set<QuatClass> distinct(all.begin(), all.end());
            if (distinct.size() != all.size())
                throw precondition_error("pack: generating multiset has duplicates but "
                                         "simplicity was requested");
        }
        result.graph = build_cayley_quaternion(fm, all);
    }
    result.bound = bound_value(result.bound_params, d);
    return result;
}

AugmentResult augment_to_exact(int64_t n, int64_t p, const AugmentOptions& opts) {
    if (!is_prime(p) || p % 4 != 1)
        throw precondition_error("augment: p must be a prime = 1 mod 4");
    const int64_t d = p + 2;

    AugmentResult result;
    result.p = p;
    MultiGraph base;
    if (opts.backend == Backend::psl) {
        auto q = find_q_lps(p, n);
        if (!q)
            throw precondition_error("augment: no admissible LPS base with at most " +
                                     std::to_string(n) + " vertices for p=" +
                                     std::to_string(p));
        result.q = *q;
        base = build_lps(p, *q);
    } else {
        if (opts.q1 == 0 || opts.q2 == 0)
            throw precondition_error("augment: quaternion backend needs q1 and q2");
        auto st = choose_exponents_below(n, opts.q1, opts.q2);
        if (!st)
            throw precondition_error("augment: no quaternion base with at most " +
                                     std::to_string(n) + " vertices");
        result.modulus = make_modulus(opts.q1, st->first, opts.q2, st->second);
        base = build_quaternion(p, result.modulus);
    }
    const int64_t m = base.n;
    result.base_n = m;
    const int64_t r_new = n - m;
    result.r_new = r_new;
    result.bound_params.kind = BoundKind::thm12;
    result.bound_params.p = p;
    result.bound_params.r_new = r_new;
    result.bound_params.m_base = m;
    result.bound = bound_value(result.bound_params, static_cast<int32_t>(d));

    if (r_new == 0) {  // the base graph is already the answer; no loops added
        result.graph = std::move(base);
        return result;
    }
    if (r_new * d > m)
        throw precondition_error("augment: target n=" + std::to_string(n) +
                                 " is too far above the largest base graph (m=" +
                                 std::to_string(m) + ", needs " + std::to_string(r_new * d) +
                                 " distinct block vertices)");
    const int64_t plain = m - r_new * d;  // base vertices not wired to new vertices
    if (opts.matching) {
        if (n % 2 != 0)
            throw precondition_error("augment: matching mode requires even n");
        if (plain % 2 != 0)
            throw precondition_error("augment: matching mode requires an even number of "
                                     "non-neighbor vertices, got " + std::to_string(plain));
    }

    std::vector<std::vector<Vertex>> rows(static_cast<size_t>(n));
    std::vector<int32_t> loops(static_cast<size_t>(n), 0);
    for (Vertex v = 0; v < base.n; ++v) {
        rows[static_cast<size_t>(v)] = base.adj[v];
        loops[static_cast<size_t>(v)] = base.loops[v];
    }
    // New vertex i (0-based) takes the base block [i*d, (i+1)*d).
    for (int64_t i = 0; i < r_new; ++i) {
        Vertex nu = static_cast<Vertex>(m + i);
        for (int64_t b = i * d; b < (i + 1) * d; ++b) {
            rows[static_cast<size_t>(nu)].push_back(static_cast<Vertex>(b));
            rows[static_cast<size_t>(b)].push_back(nu);
        }
    }
    if (opts.matching) {
        for (int64_t v = r_new * d; v + 1 < m; v += 2) {
            rows[static_cast<size_t>(v)].push_back(static_cast<Vertex>(v + 1));
            rows[static_cast<size_t>(v + 1)].push_back(static_cast<Vertex>(v));
        }
        result.matching_pairs = plain / 2;
    } else {
        for (int64_t v = r_new * d; v < m; ++v) loops[static_cast<size_t>(v)] = 1;
        result.loops_added = plain;
    }
    result.graph = graph_from_rows(static_cast<Vertex>(n), static_cast<int32_t>(d),
                                   std::move(rows), std::move(loops));
    return result;
}

namespace {

// The unique cycle of a rank-1 ball: peel leaves until only the 2-core is
// left. Returns the sorted core vertices; empty if the ball is a forest.
std::vector<Vertex> extract_unique_cycle(const Ball& b) {
    auto verts = b.vertices();
    auto local = [&verts](Vertex v) {
        return static_cast<size_t>(std::lower_bound(verts.begin(), verts.end(), v) -
                                   verts.begin());
    };
    size_t k = verts.size();
    std::vector<std::vector<size_t>> adj(k);
    std::vector<int32_t> deg(k, 0);
    for (auto [u, v] : b.induced_edges) {
        if (u == v) return {u};  // a loop is a cycle of length 1
        size_t lu = local(u), lv = local(v);
        adj[lu].push_back(lv);
        adj[lv].push_back(lu);
        ++deg[lu];
        ++deg[lv];
    }
    std::vector<size_t> stack;
    for (size_t i = 0; i < k; ++i)
        if (deg[i] <= 1) stack.push_back(i);
    std::vector<bool> removed(k, false);
    while (!stack.empty()) {
        size_t u = stack.back();
        stack.pop_back();
        if (removed[u]) continue;
        removed[u] = true;
        for (size_t w : adj[u]) {
            if (!removed[w] && --deg[w] <= 1) stack.push_back(w);
        }
    }
    std::vector<Vertex> core;
    for (size_t i = 0; i < k; ++i)
        if (!removed[i]) core.push_back(verts[i]);
    return core;
}

std::vector<Vertex> bfs_within(const MultiGraph& g, const std::vector<Vertex>& sources,
                               int32_t radius) {
    std::vector<Vertex> out;
    std::vector<int8_t> seen(static_cast<size_t>(g.n), 0);
    std::vector<std::pair<Vertex, int32_t>> queue;
    for (Vertex s : sources) {
        if (!seen[static_cast<size_t>(s)]) {
            seen[static_cast<size_t>(s)] = 1;
            queue.emplace_back(s, 0);
        }
    }
    size_t head = 0;
    while (head < queue.size()) {
        auto [u, du] = queue[head++];
        out.push_back(u);
        if (du == radius) continue;
        for (Vertex w : g.adj[u]) {
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                queue.emplace_back(w, du + 1);
            }
        }
    }
    return out;
}

}  // namespace

SparseSet find_sparse_set(const MultiGraph& g, int32_t r, int64_t u_target,
                          const SparseSetOptions& opts) {
    if (g.d < 3) throw precondition_error("find_sparse_set requires d >= 3");
    if (r < 0) throw precondition_error("find_sparse_set requires r >= 0");
    if (g.n < 2) throw precondition_error("find_sparse_set requires a nonempty graph");
    double r_cap = std::log(static_cast<double>(g.n)) /
                   std::log(static_cast<double>(g.d - 1));
    if (static_cast<double>(r) > r_cap + 1e-9)
        throw precondition_error("find_sparse_set requires r <= log_{d-1} n = " +
                                 std::to_string(r_cap));

    std::vector<int8_t> excluded(static_cast<size_t>(g.n), 0);
    if (!opts.relaxed) {
        // Collect all cycles of length <= 2r+4 while checking the hypothesis
        // that every (2r+4)-ball has at most one independent cycle.
        const int32_t hyp_radius = 2 * r + 4;
        std::set<std::vector<Vertex>> cycles;
        for (Vertex v = 0; v < g.n; ++v) {
            Ball b = ball(g, v, hyp_radius);
            int64_t rank = cycle_rank(b);
            if (rank >= 2)
                throw precondition_error("hypothesis violated: the " +
                                         std::to_string(hyp_radius) + "-ball of vertex " +
                                         std::to_string(v) + " has cycle rank " +
                                         std::to_string(rank));
            if (rank == 1) {
                auto core = extract_unique_cycle(b);
                if (!core.empty() && static_cast<int32_t>(core.size()) <= 2 * r + 4)
                    cycles.insert(core);
            }
        }
        std::vector<Vertex> cycle_vertices;
        for (const auto& c : cycles)
            cycle_vertices.insert(cycle_vertices.end(), c.begin(), c.end());
        for (Vertex v : bfs_within(g, cycle_vertices, r + 1))
            excluded[static_cast<size_t>(v)] = 1;
    }

    SparseSet result;
    result.r = r;
    result.base_n = g.n;
    std::vector<int8_t> removed(static_cast<size_t>(g.n), 0);
    for (Vertex v = 0; v < g.n; ++v) {
        if (removed[static_cast<size_t>(v)] || excluded[static_cast<size_t>(v)]) continue;
        if (opts.relaxed && cycle_rank(ball(g, v, r + 1)) != 0) continue;
        result.vertices.push_back(v);
        for (Vertex w : bfs_within(g, {v}, 2 * r + 2)) removed[static_cast<size_t>(w)] = 1;
        if (u_target > 0 && static_cast<int64_t>(result.vertices.size()) == u_target) break;
    }

    if (u_target > 0 && static_cast<int64_t>(result.vertices.size()) < u_target)
        throw precondition_error("find_sparse_set found only " +
                                 std::to_string(result.vertices.size()) + " of " +
                                 std::to_string(u_target) + " requested vertices");
    if (!opts.relaxed && u_target == 0) {
        double lower = static_cast<double>(g.n) /
                       (2.0 * std::pow(static_cast<double>(g.d), 2 * r + 3));
        if (static_cast<double>(result.vertices.size()) < lower)
            throw internal_error("sparse set cardinality " +
                                 std::to_string(result.vertices.size()) +
                                 " fell below the guaranteed bound " + std::to_string(lower));
    }
    return result;
}

void verify_sparse_set(const MultiGraph& g, const SparseSet& u, bool check_cardinality) {
    if (u.base_n != g.n)
        throw precondition_error("sparse set was built for a different graph");
    if (check_cardinality) {
        double lower = static_cast<double>(g.n) /
                       (2.0 * std::pow(static_cast<double>(g.d), 2 * u.r + 3));
        if (static_cast<double>(u.vertices.size()) < lower)
            throw precondition_error("conclusion 1 violated: |U| = " +
                                     std::to_string(u.vertices.size()) + " < n/(2d^(2r+3)) = " +
                                     std::to_string(lower));
    }
    for (Vertex v : u.vertices) {
        if (v < 0 || v >= g.n)
            throw precondition_error("sparse set vertex " + std::to_string(v) +
                                     " out of range");
        if (cycle_rank(ball(g, v, u.r + 1)) != 0)
            throw precondition_error("conclusion 2 violated: the " +
                                     std::to_string(u.r + 1) + "-ball of vertex " +
                                     std::to_string(v) + " contains a cycle");
    }
    std::vector<int8_t> in_u(static_cast<size_t>(g.n), 0);
    for (Vertex v : u.vertices) in_u[static_cast<size_t>(v)] = 1;
    for (Vertex v : u.vertices) {
        for (Vertex w : bfs_within(g, {v}, 2 * u.r + 2)) {
            if (w != v && in_u[static_cast<size_t>(w)])
                throw precondition_error("conclusion 3 violated: vertices " +
                                         std::to_string(v) + " and " + std::to_string(w) +
                                         " are closer than 2r+3");
        }
    }
}

DeleteMatchResult delete_and_match(const MultiGraph& h, const SparseSet& u,
                                   const DeleteMatchOptions& opts) {
    if (h.d % 2 != 0 && !opts.cross_star)
        throw precondition_error("delete_and_match with odd degree needs the cross-star "
                                 "pairing flag");
    verify_sparse_set(h, u, /*check_cardinality=*/false);

    if (u.vertices.empty()) {
        DeleteMatchResult res;
        res.graph = h;
        res.old_of_new.resize(static_cast<size_t>(h.n));
        for (Vertex v = 0; v < h.n; ++v) res.old_of_new[static_cast<size_t>(v)] = v;
        return res;
    }

    std::vector<int8_t> deleted(static_cast<size_t>(h.n), 0);
    for (Vertex v : u.vertices) {
        if (h.loops[v] > 0)
            throw precondition_error("deleted vertex " + std::to_string(v) + " has a loop");
        deleted[static_cast<size_t>(v)] = 1;
    }
    for (Vertex v : u.vertices) {
        const auto& star = h.adj[v];
        for (size_t i = 0; i < star.size(); ++i) {
            if (deleted[static_cast<size_t>(star[i])])
                throw precondition_error("deleted vertices " + std::to_string(v) + " and " +
                                         std::to_string(star[i]) + " are adjacent");
            if (i > 0 && star[i] == star[i - 1])
                throw precondition_error("deleted vertex " + std::to_string(v) +
                                         " has a parallel edge");
        }
    }

    DeleteMatchResult res;
    std::vector<Vertex> new_of_old(static_cast<size_t>(h.n), -1);
    for (Vertex v = 0; v < h.n; ++v) {
        if (!deleted[static_cast<size_t>(v)]) {
            new_of_old[static_cast<size_t>(v)] = static_cast<Vertex>(res.old_of_new.size());
            res.old_of_new.push_back(v);
        }
    }
    Vertex n_new = static_cast<Vertex>(res.old_of_new.size());
    std::vector<std::vector<Vertex>> rows(static_cast<size_t>(n_new));
    std::vector<int32_t> loops(static_cast<size_t>(n_new), 0);
    for (Vertex nv = 0; nv < n_new; ++nv) {
        Vertex ov = res.old_of_new[static_cast<size_t>(nv)];
        loops[static_cast<size_t>(nv)] = h.loops[ov];
        auto& row = rows[static_cast<size_t>(nv)];
        for (Vertex w : h.adj[ov])
            if (!deleted[static_cast<size_t>(w)]) row.push_back(new_of_old[static_cast<size_t>(w)]);
    }

    // Pair each star's neighbors in sorted order; odd degree leaves one
    // neighbor per star for the experimental cross-star pass.
    std::vector<Vertex> leftovers;
    auto add_edge = [&rows, &res](Vertex a, Vertex b) {
        rows[static_cast<size_t>(a)].push_back(b);
        rows[static_cast<size_t>(b)].push_back(a);
        res.matching.emplace_back(std::min(a, b), std::max(a, b));
    };
    for (Vertex v : u.vertices) {
        const auto& star = h.adj[v];
        size_t i = 0;
        for (; i + 1 < star.size(); i += 2)
            add_edge(new_of_old[static_cast<size_t>(star[i])],
                     new_of_old[static_cast<size_t>(star[i + 1])]);
        if (i < star.size()) leftovers.push_back(new_of_old[static_cast<size_t>(star[i])]);
    }
    if (!leftovers.empty()) {
        if (leftovers.size() % 2 != 0)
            throw precondition_error("cross-star pairing needs an even number of deleted "
                                     "vertices for odd degree");
        for (size_t i = 0; i + 1 < leftovers.size(); i += 2)
            add_edge(leftovers[i], leftovers[i + 1]);
    }

    res.graph = graph_from_rows(n_new, h.d, std::move(rows), std::move(loops));

    for (auto [a, b] : res.matching) {
        Ball bl = ball_edge(res.graph, a, b, u.r);
        if (cycle_rank(bl) != 0)
            throw precondition_error("matching edge (" + std::to_string(a) + "," +
                                     std::to_string(b) + ") has a cycle in its " +
                                     std::to_string(u.r) + "-ball");
    }
    return res;
}

TrimResult trim_to_exact(int64_t n, int32_t d, double epsilon, int64_t base_p,
                         int64_t base_q, const TrimOptions& opts) {
    if (epsilon <= 0.0) throw precondition_error("trim: epsilon must be positive");
    if (n * d % 2 != 0) throw precondition_error("trim: nd must be even");
    if (base_p + 1 != d)
        throw precondition_error("trim: base LPS degree p+1 = " + std::to_string(base_p + 1) +
                                 " does not match requested d = " + std::to_string(d));
    TrimResult result;
    result.r = static_cast<int32_t>(std::ceil(2.0 / epsilon));

    MultiGraph base = build_lps(base_p, base_q);
    if (n > base.n)
        throw precondition_error("trim: target n exceeds the base graph size " +
                                 std::to_string(base.n));
    int64_t u_count = base.n - n;
    result.u_count = u_count;

    EigOptions eig = opts.eig;
    result.lambda_base = max_nontrivial_abs_eig(base, eig).lambda;
    result.bound_params.kind = BoundKind::trim;
    result.bound_params.lambda_base = result.lambda_base;
    result.bound_params.r = result.r;
    result.bound = bound_value(result.bound_params, d);

    if (u_count == 0) {
        result.graph = std::move(base);
        result.sparse_set = SparseSet{{}, result.r, base.n};
        return result;
    }
    SparseSetOptions sopts;
    sopts.relaxed = opts.relaxed_sparse_set;
    result.sparse_set = find_sparse_set(base, result.r, u_count, sopts);
    result.graph = delete_and_match(base, result.sparse_set).graph;
    return result;
}

}  // namespace expander
