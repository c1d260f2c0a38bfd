#include "expander/multigraph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "expander/errors.hpp"

namespace expander {

int64_t MultiGraph::edge_count() const {
    int64_t incidences = 0;
    for (const auto& row : adj) incidences += static_cast<int64_t>(row.size());
    return incidences / 2;
}

int64_t MultiGraph::loop_count() const {
    return std::accumulate(loops.begin(), loops.end(), int64_t{0});
}

std::vector<std::pair<Vertex, Vertex>> MultiGraph::edge_list() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(static_cast<size_t>(edge_count() + loop_count()));
    for (Vertex u = 0; u < n; ++u) {
        for (int32_t k = 0; k < loops[u]; ++k) out.emplace_back(u, u);
        const auto& row = adj[u];
        size_t i = 0;
        while (i < row.size() && row[i] < u) ++i;  // counted from the other side
        for (; i < row.size(); ++i) out.emplace_back(u, row[i]);
    }
    return out;
}

namespace {

void validate(const MultiGraph& g) {
    if (g.n < 0) throw precondition_error("vertex count must be non-negative");
    if (g.d < 0) throw precondition_error("degree must be non-negative");
    for (Vertex v = 0; v < g.n; ++v) {
        int64_t deg = static_cast<int64_t>(g.adj[v].size()) + g.loops[v];
        if (deg != g.d)
            throw precondition_error("vertex " + std::to_string(v) + " has degree " +
                                     std::to_string(deg) + ", expected " + std::to_string(g.d));
        if (g.loops[v] < 0)
            throw precondition_error("vertex " + std::to_string(v) + " has negative loop count");
    }
    // Symmetry: multiplicity(u,v) == multiplicity(v,u). Rows are sorted, so
    // compare run lengths via a forward scan over each row against its mirror.
    for (Vertex u = 0; u < g.n; ++u) {
        const auto& row = g.adj[u];
        for (size_t i = 0; i < row.size();) {
            Vertex v = row[i];
            if (v < 0 || v >= g.n)
                throw precondition_error("neighbor index " + std::to_string(v) + " out of range");
            if (v == u)
                throw internal_error("loop stored in adjacency row of vertex " + std::to_string(u));
            size_t j = i;
            while (j < row.size() && row[j] == v) ++j;
            size_t mult_uv = j - i;
            const auto& mirror = g.adj[v];
            auto [lo, hi] = std::equal_range(mirror.begin(), mirror.end(), u);
            if (static_cast<size_t>(hi - lo) != mult_uv)
                throw precondition_error("asymmetric multiplicity between vertices " +
                                         std::to_string(u) + " and " + std::to_string(v));
            i = j;
        }
    }
}

}  // namespace

MultiGraph build_graph(Vertex n, int32_t d,
                       std::span<const std::pair<Vertex, Vertex>> edges,
                       std::span<const Vertex> loop_vertices) {
    MultiGraph g;
    g.n = n;
    g.d = d;
    g.adj.assign(static_cast<size_t>(std::max<Vertex>(n, 0)), {});
    g.loops.assign(static_cast<size_t>(std::max<Vertex>(n, 0)), 0);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw precondition_error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                     ") out of range for n=" + std::to_string(n));
        if (u == v) {
            ++g.loops[u];
        } else {
            g.adj[u].push_back(v);
            g.adj[v].push_back(u);
        }
    }
    for (Vertex v : loop_vertices) {
        if (v < 0 || v >= n)
            throw precondition_error("loop vertex " + std::to_string(v) + " out of range");
        ++g.loops[v];
    }
    for (auto& row : g.adj) std::sort(row.begin(), row.end());
    validate(g);
    return g;
}

MultiGraph graph_from_rows(Vertex n, int32_t d,
                           std::vector<std::vector<Vertex>> rows,
                           std::vector<int32_t> loops) {
    if (static_cast<Vertex>(rows.size()) != n)
        throw precondition_error("row count does not match vertex count");
    MultiGraph g;
    g.n = n;
    g.d = d;
    g.adj = std::move(rows);
    if (loops.empty()) loops.assign(static_cast<size_t>(n), 0);
    if (static_cast<Vertex>(loops.size()) != n)
        throw precondition_error("loop count array does not match vertex count");
    g.loops = std::move(loops);
    for (auto& row : g.adj) std::sort(row.begin(), row.end());
    validate(g);
    return g;
}

void write_edge_list(std::ostream& out, const MultiGraph& g) {
    out << "expander v1 n=" << g.n << " d=" << g.d << "\n";
    for (auto [u, v] : g.edge_list()) out << u << " " << v << "\n";
}

std::string edge_list_string(const MultiGraph& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

void write_edge_list_file(const std::string& path, const MultiGraph& g) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw precondition_error("cannot open " + path + " for writing");
    write_edge_list(f, g);
    if (!f) throw precondition_error("write failed: " + path);
}

MultiGraph read_edge_list(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw precondition_error("empty graph file");
    long long n = -1, d = -1;
    {
        std::istringstream hs(line);
        std::string magic, version, nfield, dfield;
        hs >> magic >> version >> nfield >> dfield;
        if (magic != "expander" || version != "v1" || nfield.rfind("n=", 0) != 0 ||
            dfield.rfind("d=", 0) != 0)
            throw precondition_error("bad header line: " + line);
        try {
            n = std::stoll(nfield.substr(2));
            d = std::stoll(dfield.substr(2));
        } catch (const std::exception&) {
            throw precondition_error("bad header line: " + line);
        }
    }
    if (n < 0 || d < 0) throw precondition_error("negative n or d in header");
    std::vector<std::pair<Vertex, Vertex>> edges;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v))
            throw precondition_error("bad edge at line " + std::to_string(lineno) + ": " + line);
        std::string rest;
        if (ls >> rest)
            throw precondition_error("trailing data at line " + std::to_string(lineno));
        if (u > v)
            throw precondition_error("edge not normalized (u > v) at line " +
                                     std::to_string(lineno));
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return build_graph(static_cast<Vertex>(n), static_cast<int32_t>(d), edges);
}

MultiGraph read_edge_list_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw precondition_error("cannot open " + path);
    return read_edge_list(f);
}

}  // namespace expander
