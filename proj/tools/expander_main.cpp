// Command-line front end: build certified expander graphs, verify spectral
// certificates, and inspect graph files.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "expander/constructions.hpp"
#include "expander/errors.hpp"
#include "expander/graph_algorithms.hpp"
#include "expander/multigraph.hpp"
#include "expander/number_theory.hpp"
#include "expander/spectral.hpp"

namespace {

using expander::MultiGraph;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCertFail = 4;

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw expander::precondition_error("cannot open " + path + " for writing");
    f << content;
    if (!f) throw expander::precondition_error("write failed: " + path);
}

ordered_json graph_summary(const MultiGraph& g) {
    return ordered_json{{"n", g.n}, {"d", g.d}, {"edges", g.edge_count()},
                        {"loops", g.loop_count()}};
}

struct BuildRequest {
    std::string method;
    std::string backend = "psl";
    int64_t n = 0;
    int64_t d = 0;
    int64_t p = 0;
    int64_t q = 0;
    int64_t q1 = 0, q2 = 0;
    int64_t m = 0;
    int64_t s = 0, t = 0;
    double epsilon = 0.0;
    bool simple = false;
    bool matching = false;
    bool relaxed_sparse_set = false;
    std::string out;
    std::string manifest;
};

int run_build(const BuildRequest& req) {
    using namespace expander;
    ordered_json manifest;
    manifest["method"] = req.method;
    MultiGraph graph;

    if (req.method == "lps") {
        if (req.p == 0 || req.q == 0) throw precondition_error("lps needs --p and --q");
        graph = build_lps(req.p, req.q);
        manifest["parameters"] = ordered_json{{"p", req.p}, {"q", req.q}};
        manifest["bound"] = ordered_json{{"kind", "ramanujan"},
                                         {"value", 2.0 * std::sqrt(double(req.p))},
                                         {"inputs", ordered_json{{"p", req.p}}}};
    } else if (req.method == "quaternion") {
        if (req.p == 0) throw precondition_error("quaternion needs --p");
        FactoredModulus fm;
        if (req.m != 0)
            fm = factor_modulus(req.m);
        else if (req.q1 != 0 && req.q2 != 0)
            fm = make_modulus(req.q1, req.s > 0 ? int32_t(req.s) : 1, req.q2,
                              req.t > 0 ? int32_t(req.t) : 1);
        else
            throw precondition_error("quaternion needs --m or --q1/--q2");
        graph = build_quaternion(req.p, fm);
        ordered_json factors = ordered_json::array();
        for (const auto& f : fm.factors)
            factors.push_back(ordered_json{{"q", f.q}, {"e", f.e}});
        manifest["parameters"] = ordered_json{{"p", req.p}, {"m", fm.m},
                                              {"factors", factors}};
        manifest["bound"] = ordered_json{{"kind", "ramanujan"},
                                         {"value", 2.0 * std::sqrt(double(req.p))},
                                         {"inputs", ordered_json{{"p", req.p}}}};
    } else if (req.method == "pack") {
        if (req.d == 0) throw precondition_error("pack needs --d");
        PackOptions opts;
        opts.backend = req.backend == "quaternion" ? Backend::quaternion : Backend::psl;
        opts.q = req.q;
        opts.q1 = req.q1;
        opts.q2 = req.q2;
        opts.s = int32_t(req.s);
        opts.t = int32_t(req.t);
        opts.target_n = req.n;
        opts.simple = req.simple;
        PackResult res = pack_cayley(int32_t(req.d), opts);
        graph = std::move(res.graph);
        manifest["parameters"] = ordered_json{{"d", req.d}, {"backend", req.backend}};
        if (opts.backend == Backend::psl) {
            manifest["parameters"]["q"] = res.q;
        } else {
            manifest["parameters"]["m"] = res.modulus.m;
        }
        manifest["decomposition"] = ordered_json{{"primes", res.decomposition.primes},
                                                 {"leftover", res.decomposition.leftover}};
        ordered_json blocks = ordered_json::array();
        for (const auto& b : res.blocks)
            blocks.push_back(ordered_json{{"label", b.label},
                                          {"generators", b.psl_gens.size() + b.quat_gens.size()},
                                          {"lambda_bound", b.lambda_bound}});
        manifest["blocks"] = blocks;
        manifest["bound"] = ordered_json{
            {"kind", "pack-union"},
            {"value", res.bound},
            {"inputs", ordered_json{{"primes", res.decomposition.primes},
                                    {"pairs", res.bound_params.arbitrary_pairs},
                                    {"involutions", res.bound_params.involutions}}}};
    } else if (req.method == "exact-n") {
        if (req.n == 0 || req.p == 0) throw precondition_error("exact-n needs --n and --p");
        AugmentOptions opts;
        opts.backend = req.backend == "quaternion" ? Backend::quaternion : Backend::psl;
        opts.matching = req.matching;
        opts.q1 = req.q1;
        opts.q2 = req.q2;
        AugmentResult res = augment_to_exact(req.n, req.p, opts);
        graph = std::move(res.graph);
        manifest["parameters"] = ordered_json{{"n", req.n}, {"p", req.p},
                                              {"backend", req.backend},
                                              {"matching", req.matching}};
        ordered_json base = ordered_json{{"n", res.base_n}};
        if (opts.backend == Backend::psl)
            base["q"] = res.q;
        else
            base["m"] = res.modulus.m;
        manifest["base"] = base;
        manifest["augmentation"] = ordered_json{{"new_vertices", res.r_new},
                                                {"loops", res.loops_added},
                                                {"matching_pairs", res.matching_pairs}};
        manifest["bound"] = ordered_json{
            {"kind", "thm12"},
            {"value", res.bound},
            {"inputs", ordered_json{{"p", res.p}, {"r_new", res.r_new},
                                    {"m_base", res.base_n}}}};
    } else if (req.method == "trim") {
        if (req.n == 0 || req.d == 0 || req.epsilon <= 0.0 || req.p == 0 || req.q == 0)
            throw precondition_error("trim needs --n, --d, --epsilon, --p and --q");
        TrimOptions opts;
        opts.relaxed_sparse_set = req.relaxed_sparse_set;
        TrimResult res = trim_to_exact(req.n, int32_t(req.d), req.epsilon, req.p, req.q, opts);
        graph = std::move(res.graph);
        manifest["parameters"] = ordered_json{{"n", req.n}, {"d", req.d},
                                              {"epsilon", req.epsilon},
                                              {"base_p", req.p}, {"base_q", req.q},
                                              {"relaxed_sparse_set", req.relaxed_sparse_set}};
        manifest["trim"] = ordered_json{{"r", res.r}, {"deleted", res.u_count},
                                        {"deleted_vertices", res.sparse_set.vertices}};
        manifest["bound"] = ordered_json{
            {"kind", "trim"},
            {"value", res.bound},
            {"inputs", ordered_json{{"lambda_base", res.lambda_base}, {"r", res.r}}}};
    } else {
        throw precondition_error("unknown build method: " + req.method);
    }

    manifest["graph"] = graph_summary(graph);
    write_text_file(req.out, edge_list_string(graph));
    std::string manifest_path = req.manifest.empty() ? req.out + ".manifest.json" : req.manifest;
    write_text_file(manifest_path, manifest.dump(2) + "\n");
    std::cout << "wrote " << req.out << " (n=" << graph.n << ", d=" << graph.d << ")\n";
    return kExitOk;
}

struct VerifyRequest {
    std::string in;
    std::string bound;
    std::string cert;
    int64_t p = 0;
    int64_t r_new = 0;
    int64_t m_base = 0;
    std::vector<int64_t> primes;
    int64_t pairs = 0;
    int64_t involutions = 0;
    double lambda_base = 0.0;
    int64_t r = 0;
    double tolerance = 1e-8;
    int64_t max_iterations = 100000;
    bool force_dense = false;
    bool force_iterative = false;
};

int run_verify(const VerifyRequest& req) {
    using namespace expander;
    MultiGraph g = read_edge_list_file(req.in);
    BoundParams params;
    if (req.bound == "ramanujan") {
        params.kind = BoundKind::ramanujan;
    } else if (req.bound == "thm12") {
        params.kind = BoundKind::thm12;
        params.p = req.p;
        params.r_new = req.r_new;
        params.m_base = req.m_base;
    } else if (req.bound == "pack-union") {
        params.kind = BoundKind::pack_union;
        params.primes = req.primes;
        params.arbitrary_pairs = int32_t(req.pairs);
        params.involutions = int32_t(req.involutions);
    } else if (req.bound == "trim") {
        params.kind = BoundKind::trim;
        params.lambda_base = req.lambda_base;
        params.r = int32_t(req.r);
    } else {
        throw precondition_error("unknown bound kind: " + req.bound);
    }
    CertifyOptions opts;
    opts.eig.tolerance = req.tolerance;
    opts.eig.max_iterations = req.max_iterations;
    opts.eig.force_dense = req.force_dense;
    opts.eig.force_iterative = req.force_iterative;
    SpectralCertificate cert = certify(g, params, opts);
    std::string json = certificate_json(cert);
    if (!req.cert.empty()) write_text_file(req.cert, json);
    std::cout << json;
    return cert.pass ? kExitOk : kExitCertFail;
}

struct InfoRequest {
    std::string in;
    int64_t girth_cap = 12;
    int64_t r = -1;
};

int run_info(const InfoRequest& req) {
    using namespace expander;
    MultiGraph g = read_edge_list_file(req.in);
    std::cout << "n " << g.n << "\n";
    std::cout << "d " << g.d << "\n";
    std::cout << "edges " << g.edge_count() << "\n";
    std::cout << "loops " << g.loop_count() << "\n";
    std::cout << "connected " << (is_connected(g) ? "yes" : "no") << "\n";
    std::cout << "bipartite " << (is_bipartite(g) ? "yes" : "no") << "\n";
    auto gr = girth_at_most(g, int32_t(req.girth_cap));
    if (gr)
        std::cout << "girth " << *gr << "\n";
    else
        std::cout << "girth >= " << req.girth_cap + 1 << "\n";
    if (req.r >= 0) {
        // Hypothesis summary: does every (2r+4)-ball have at most one cycle?
        int32_t radius = 2 * int32_t(req.r) + 4;
        int64_t worst_rank = 0;
        Vertex worst_vertex = -1;
        for (Vertex v = 0; v < g.n; ++v) {
            int64_t rank = cycle_rank(ball(g, v, radius));
            if (rank > worst_rank) {
                worst_rank = rank;
                worst_vertex = v;
                if (worst_rank >= 2) break;
            }
        }
        std::cout << "ball-hypothesis r=" << req.r << " radius=" << radius << " "
                  << (worst_rank <= 1 ? "holds" : "fails") << "\n";
        if (worst_rank >= 2)
            std::cout << "ball-hypothesis witness vertex " << worst_vertex << " rank "
                      << worst_rank << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic near-Ramanujan graph construction and verification"};
    app.require_subcommand(1);

    BuildRequest breq;
    auto* build = app.add_subcommand("build", "construct a graph and write edge list + manifest");
    build->add_option("--method", breq.method, "lps | quaternion | pack | exact-n | trim")
        ->required();
    build->add_option("--backend", breq.backend, "psl | quaternion");
    build->add_option("--n", breq.n, "target vertex count");
    build->add_option("--d", breq.d, "degree");
    build->add_option("--p", breq.p, "prime p = 1 mod 4");
    build->add_option("--q", breq.q, "PSL group prime");
    build->add_option("--q1", breq.q1, "quaternion modulus prime 1");
    build->add_option("--q2", breq.q2, "quaternion modulus prime 2");
    build->add_option("--m", breq.m, "quaternion modulus");
    build->add_option("--s", breq.s, "exponent of q1");
    build->add_option("--t", breq.t, "exponent of q2");
    build->add_option("--epsilon", breq.epsilon, "trim accuracy parameter");
    build->add_flag("--simple", breq.simple, "require a duplicate-free generating set");
    build->add_flag("--matching", breq.matching, "use a matching instead of loops");
    build->add_flag("--relaxed-sparse-set", breq.relaxed_sparse_set,
                    "relaxed sparse-set mode (skips the ball hypothesis)");
    build->add_option("--out", breq.out, "output edge-list path")->required();
    build->add_option("--manifest", breq.manifest, "manifest path (default <out>.manifest.json)");

    VerifyRequest vreq;
    auto* verify = app.add_subcommand("verify", "measure lambda and certify against a bound");
    verify->add_option("--in", vreq.in, "graph file")->required();
    verify->add_option("--bound", vreq.bound, "ramanujan | thm12 | pack-union | trim")
        ->required();
    verify->add_option("--cert", vreq.cert, "certificate output path");
    verify->add_option("--p", vreq.p, "thm12: prime p");
    verify->add_option("--r-new", vreq.r_new, "thm12: added vertices");
    verify->add_option("--m-base", vreq.m_base, "thm12: base graph size");
    verify->add_option("--primes", vreq.primes, "pack-union: block primes");
    verify->add_option("--pairs", vreq.pairs, "pack-union: arbitrary pairs");
    verify->add_option("--involutions", vreq.involutions, "pack-union: involutions");
    verify->add_option("--lambda-base", vreq.lambda_base, "trim: base lambda");
    verify->add_option("--r", vreq.r, "trim: radius parameter");
    verify->add_option("--tolerance", vreq.tolerance, "solver tolerance");
    verify->add_option("--max-iterations", vreq.max_iterations, "iterative solver cap");
    verify->add_flag("--force-dense", vreq.force_dense, "force the dense-exact path");
    verify->add_flag("--force-iterative", vreq.force_iterative, "force the iterative path");

    InfoRequest ireq;
    auto* info = app.add_subcommand("info", "print graph statistics");
    info->add_option("--in", ireq.in, "graph file")->required();
    info->add_option("--girth-cap", ireq.girth_cap, "girth search cap (default 12)");
    info->add_option("--r", ireq.r, "also run the (2r+4)-ball hypothesis check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return run_build(breq);
        if (verify->parsed()) return run_verify(vreq);
        if (info->parsed()) return run_info(ireq);
    } catch (const expander::precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const expander::solver_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const expander::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitPrecondition;
}
