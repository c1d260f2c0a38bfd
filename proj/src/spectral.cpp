#include "expander/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "expander/errors.hpp"
#include "expander/graph_algorithms.hpp"

namespace expander {

std::vector<double> apply_adjacency(const MultiGraph& g, std::span<const double> x) {
    if (static_cast<Vertex>(x.size()) != g.n)
        throw precondition_error("vector length " + std::to_string(x.size()) +
                                 " does not match n=" + std::to_string(g.n));
    std::vector<double> y(static_cast<size_t>(g.n), 0.0);
    for (Vertex u = 0; u < g.n; ++u) {
        double acc = g.loops[u] * x[static_cast<size_t>(u)];
        for (Vertex w : g.adj[u]) acc += x[static_cast<size_t>(w)];
        y[static_cast<size_t>(u)] = acc;
    }
    return y;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Uniform doubles in [-1, 1) from raw 64-bit draws; bit-stable across
// standard library implementations, unlike uniform_real_distribution.
std::vector<double> seeded_start(Vertex n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(static_cast<size_t>(n));
    for (auto& x : v) x = static_cast<double>(rng() >> 11) * (2.0 / 9007199254740992.0) - 1.0;
    return v;
}

struct PowerOutcome {
    double mu = 0.0;  // top Rayleigh value of the shifted operator
    std::vector<double> vec;
    double residual = 0.0;
    int64_t iterations = 0;
    bool converged = false;
};

// Power iteration for B = A + dI (sign = +1) or B = dI - A (sign = -1),
// deflated against the all-ones vector every step. Both operators are PSD
// for a d-regular graph, so the Rayleigh quotient increases to the top
// eigenvalue of the deflated operator.
PowerOutcome power_iteration(const MultiGraph& g, int sign, const EigOptions& opts,
                             uint64_t seed) {
    const size_t n = static_cast<size_t>(g.n);
    const double d = static_cast<double>(g.d);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

    std::vector<double> v = seeded_start(g.n, seed);
    auto deflate = [&](std::vector<double>& x) {
        double s = 0.0;
        for (double xi : x) s += xi;
        s *= inv_sqrt_n;
        for (double& xi : x) xi -= s * inv_sqrt_n;
    };
    deflate(v);
    double nv = norm(v);
    if (nv < 1e-12) {  // n = 1, or a pathological start
        PowerOutcome o;
        o.converged = true;
        o.vec.assign(n, 0.0);
        return o;
    }
    for (double& x : v) x /= nv;

    PowerOutcome o;
    double mu_prev = 0.0;
    for (int64_t it = 1; it <= opts.max_iterations; ++it) {
        std::vector<double> w = apply_adjacency(g, v);
        if (sign > 0) {
            for (size_t i = 0; i < n; ++i) w[i] += d * v[i];
        } else {
            for (size_t i = 0; i < n; ++i) w[i] = d * v[i] - w[i];
        }
        deflate(w);
        double mu = dot(v, w);
        double wn = norm(w);
        // ||Bv - mu v||^2 = ||Bv||^2 - mu^2 for unit v.
        double res_sq = std::max(0.0, wn * wn - mu * mu);
        o.mu = mu;
        o.residual = std::sqrt(res_sq);
        o.iterations = it;
        bool rayleigh_settled = std::abs(mu - mu_prev) <= opts.tolerance * std::max(1.0, std::abs(mu));
        if (rayleigh_settled && o.residual <= opts.tolerance * std::max(1.0, d)) {
            o.vec = v;
            o.converged = true;
            return o;
        }
        mu_prev = mu;
        if (wn < 1e-300) {  // operator annihilates the complement; eigenvalue 0
            o.vec = v;
            o.mu = 0.0;
            o.residual = 0.0;
            o.converged = true;
            return o;
        }
        for (size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
    }
    o.vec = v;
    return o;
}

EigResult dense_path(const MultiGraph& g) {
    const Vertex n = g.n;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Vertex u = 0; u < n; ++u) {
        a(u, u) = static_cast<double>(g.loops[u]);
        for (Vertex w : g.adj[u]) a(u, w) += 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success)
        throw internal_error("dense symmetric eigensolver failed");
    const auto& evals = solver.eigenvalues();  // ascending
    EigResult r;
    r.method = "dense-exact";
    if (n < 2) {
        r.witness.assign(static_cast<size_t>(n), 0.0);
        return r;
    }
    // The largest eigenvalue is the single trivial d (connectivity is checked
    // by the caller); everything else competes for lambda.
    if (std::abs(evals(n - 1) - g.d) > 1e-6 * std::max(1, g.d))
        throw internal_error("top eigenvalue " + std::to_string(evals(n - 1)) +
                             " differs from degree " + std::to_string(g.d));
    Eigen::Index pick = std::abs(evals(0)) >= std::abs(evals(n - 2)) ? 0 : n - 2;
    r.lambda = std::abs(evals(pick));
    r.witness_value = evals(pick);
    r.witness.resize(static_cast<size_t>(n));
    Eigen::VectorXd::Map(r.witness.data(), n) = solver.eigenvectors().col(pick);
    Eigen::VectorXd resid = a * solver.eigenvectors().col(pick) -
                            evals(pick) * solver.eigenvectors().col(pick);
    r.residual = resid.norm();
    return r;
}

}  // namespace

EigResult max_nontrivial_abs_eig(const MultiGraph& g, const EigOptions& opts) {
    if (g.n == 0) throw precondition_error("cannot take eigenvalues of an empty graph");
    if (!opts.allow_disconnected && !is_connected(g))
        throw precondition_error("graph is disconnected; lambda is only defined against "
                                 "a single trivial eigenvalue");
    if (opts.force_dense && opts.force_iterative)
        throw precondition_error("cannot force both solver paths at once");
    bool dense = !opts.force_iterative && (opts.force_dense || g.n <= opts.dense_threshold);
    if (dense) return dense_path(g);

    PowerOutcome plus = power_iteration(g, +1, opts, opts.seed);
    PowerOutcome minus = power_iteration(g, -1, opts, opts.seed + 0x51ed270b);
    double lam_plus = plus.mu - g.d;    // largest nontrivial eigenvalue
    double lam_minus = minus.mu - g.d;  // minus the smallest nontrivial eigenvalue
    EigResult r;
    r.method = "iterative";
    r.iterations = plus.iterations + minus.iterations;
    const PowerOutcome& top = lam_plus >= lam_minus ? plus : minus;
    r.lambda = std::max(lam_plus, lam_minus);
    r.witness_value = lam_plus >= lam_minus ? lam_plus : -lam_minus;
    r.witness = top.vec;
    r.residual = top.residual;
    if (!plus.converged || !minus.converged)
        throw solver_error("power iteration did not converge within " +
                               std::to_string(opts.max_iterations) + " iterations" +
                               " (best lambda " + std::to_string(r.lambda) + ", residual " +
                               std::to_string(std::max(plus.residual, minus.residual)) + ")",
                           r.lambda, std::max(plus.residual, minus.residual));
    return r;
}

std::string bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::ramanujan: return "ramanujan";
        case BoundKind::thm12: return "thm12";
        case BoundKind::pack_union: return "pack-union";
        case BoundKind::trim: return "trim";
    }
    throw internal_error("unknown bound kind");
}

double bound_value(const BoundParams& params, int32_t d) {
    switch (params.kind) {
        case BoundKind::ramanujan:
            if (d < 1) throw precondition_error("ramanujan bound needs d >= 1");
            return 2.0 * std::sqrt(static_cast<double>(d - 1));
        case BoundKind::thm12: {
            if (params.p < 1 || params.m_base < 1 || params.r_new < 0)
                throw precondition_error("thm12 bound needs p, m_base >= 1 and r_new >= 0");
            double p = static_cast<double>(params.p);
            return std::sqrt(2.0 * p + 2.0) + std::sqrt(p) +
                   static_cast<double>(params.r_new) / static_cast<double>(params.m_base) *
                       (p + 2.0);
        }
        case BoundKind::pack_union: {
            double b = 0.0;
            for (int64_t p : params.primes) b += 2.0 * std::sqrt(static_cast<double>(p));
            b += 2.0 * params.arbitrary_pairs;
            b += 1.0 * params.involutions;
            return b;
        }
        case BoundKind::trim:
            if (params.r < 1) throw precondition_error("trim bound needs r >= 1");
            return params.lambda_base + 1.0 / params.r;
    }
    throw internal_error("unknown bound kind");
}

SpectralCertificate certify(const MultiGraph& g, const BoundParams& params,
                            const CertifyOptions& opts) {
    EigResult eig = max_nontrivial_abs_eig(g, opts.eig);
    SpectralCertificate cert;
    cert.n = g.n;
    cert.d = g.d;
    cert.lambda = eig.lambda;
    cert.method = eig.method;
    cert.residual = g.d > 0 ? eig.residual / g.d : eig.residual;
    cert.iterations = eig.iterations;
    cert.bound_kind = bound_kind_name(params.kind);
    cert.bound_value = bound_value(params, g.d);
    cert.heuristic = eig.method == "iterative";
    double tol = cert.heuristic ? opts.tol_iterative : opts.tol_dense;
    cert.pass = cert.lambda <= cert.bound_value + tol;
    return cert;
}

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void write_certificate(std::ostream& out, const SpectralCertificate& cert) {
    out << "{\"n\": " << cert.n << ", \"d\": " << cert.d << ", \"lambda\": "
        << fmt17(cert.lambda) << ", \"method\": \"" << cert.method
        << "\", \"residual\": " << fmt17(cert.residual)
        << ", \"iterations\": " << cert.iterations << ", \"bound_kind\": \""
        << cert.bound_kind << "\", \"bound_value\": " << fmt17(cert.bound_value)
        << ", \"verdict\": \"" << (cert.pass ? "pass" : "fail") << "\", \"heuristic\": "
        << (cert.heuristic ? "true" : "false") << "}\n";
}

std::string certificate_json(const SpectralCertificate& cert) {
    std::ostringstream os;
    write_certificate(os, cert);
    return os.str();
}

DelocalizationProfile delocalization_profile(const MultiGraph& g, Vertex u, Vertex v,
                                             int32_t r, std::span<const double> f,
                                             double mu) {
    if (static_cast<Vertex>(f.size()) != g.n)
        throw precondition_error("eigenvector length does not match n");
    if (g.d < 3) throw precondition_error("delocalization profile requires d >= 3");
    double threshold = 2.0 * std::sqrt(static_cast<double>(g.d - 1));
    if (mu < threshold - 1e-12)
        throw precondition_error("delocalization requires mu >= 2*sqrt(d-1), got mu=" +
                                 std::to_string(mu));
    Ball b = ball_edge(g, u, v, r);
    if (cycle_rank(b) != 0)
        throw precondition_error("the " + std::to_string(r) + "-ball of edge (" +
                                 std::to_string(u) + "," + std::to_string(v) +
                                 ") contains a cycle");
    std::vector<double> av = apply_adjacency(g, f);
    double norm_sq = dot(f, f);
    if (norm_sq <= 0.0) throw precondition_error("eigenvector must be nonzero");
    double res_sq = 0.0;
    for (size_t i = 0; i < f.size(); ++i) {
        double e = av[i] - mu * f[i];
        res_sq += e * e;
    }
    DelocalizationProfile prof;
    prof.mu = mu;
    prof.residual = std::sqrt(res_sq);
    // Reject vectors that are not eigenvectors up to solver accuracy.
    if (prof.residual > 1e-3 * g.d * std::sqrt(norm_sq))
        throw precondition_error("vector is not an eigenvector up to solver residual "
                                 "(||Af - mu f|| = " + std::to_string(prof.residual) + ")");
    prof.slack = 10.0 * prof.residual * norm_sq;
    prof.layer_mass.reserve(b.layers.size());
    for (const auto& layer : b.layers) {
        double s = 0.0;
        for (Vertex w : layer) s += f[static_cast<size_t>(w)] * f[static_cast<size_t>(w)];
        prof.layer_mass.push_back(s);
    }
    prof.monotone = true;
    for (size_t i = 1; i < prof.layer_mass.size(); ++i)
        if (prof.layer_mass[i] < prof.layer_mass[i - 1] - prof.slack) prof.monotone = false;
    double ratio = (3.0 * g.d - 4.0) / g.d;
    prof.strengthened = prof.layer_mass.size() < 2 ||
                        prof.layer_mass[1] >= ratio * prof.layer_mass[0] - prof.slack;
    return prof;
}

MultiGraph union_graph(std::span<const MultiGraph> blocks) {
    if (blocks.empty()) throw precondition_error("union of zero graphs");
    Vertex n = blocks[0].n;
    int32_t d = 0;
    std::vector<std::vector<Vertex>> rows(static_cast<size_t>(n));
    std::vector<int32_t> loops(static_cast<size_t>(n), 0);
    for (const auto& g : blocks) {
        if (g.n != n) throw precondition_error("union requires a common vertex set");
        d += g.d;
        for (Vertex v = 0; v < n; ++v) {
            auto& row = rows[static_cast<size_t>(v)];
            row.insert(row.end(), g.adj[v].begin(), g.adj[v].end());
            loops[static_cast<size_t>(v)] += g.loops[v];
        }
    }
    return graph_from_rows(n, d, std::move(rows), std::move(loops));
}

UnionBoundReport union_bound_check(std::span<const MultiGraph> blocks, double tolerance,
                                   const EigOptions& opts) {
    EigOptions block_opts = opts;
    block_opts.allow_disconnected = true;  // pack blocks need not be connected
    UnionBoundReport rep;
    double sum = 0.0;
    for (const auto& g : blocks) {
        double lam = max_nontrivial_abs_eig(g, block_opts).lambda;
        rep.lambdas.push_back(lam);
        sum += lam;
    }
    MultiGraph u = union_graph(blocks);
    rep.lambda_union = max_nontrivial_abs_eig(u, block_opts).lambda;
    rep.bound = sum + tolerance;
    rep.pass = rep.lambda_union <= rep.bound;
    return rep;
}

}  // namespace expander
