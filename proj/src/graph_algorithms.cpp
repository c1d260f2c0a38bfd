#include "expander/graph_algorithms.hpp"

#include <algorithm>
#include <numeric>

#include "expander/errors.hpp"

namespace expander {

namespace {

// Shared BFS scratch. Sized to the host graph on first use and reused across
// calls via a version stamp, so repeated ball queries do not pay O(n) resets.
struct BfsScratch {
    std::vector<int64_t> stamp;
    std::vector<int32_t> dist;
    int64_t version = 0;

    void prepare(size_t n) {
        if (stamp.size() < n) {
            stamp.resize(n, 0);
            dist.resize(n, 0);
        }
        ++version;
    }
    bool seen(Vertex v) const { return stamp[static_cast<size_t>(v)] == version; }
    void visit(Vertex v, int32_t d) {
        stamp[static_cast<size_t>(v)] = version;
        dist[static_cast<size_t>(v)] = d;
    }
    int32_t dist_of(Vertex v) const { return dist[static_cast<size_t>(v)]; }
};

thread_local BfsScratch tl_scratch;

Ball ball_impl(const MultiGraph& g, std::vector<Vertex> center, int32_t radius) {
    if (radius < 0) throw precondition_error("ball radius must be >= 0");
    for (Vertex c : center)
        if (c < 0 || c >= g.n)
            throw precondition_error("ball center " + std::to_string(c) + " out of range");

    auto& sc = tl_scratch;
    sc.prepare(static_cast<size_t>(g.n));

    Ball b;
    b.center = center;
    b.radius = radius;
    b.layers.assign(static_cast<size_t>(radius) + 1, {});
    for (Vertex c : center) {
        if (sc.seen(c)) continue;  // degenerate center with repeats
        sc.visit(c, 0);
        b.layers[0].push_back(c);
    }
    std::sort(b.layers[0].begin(), b.layers[0].end());
    for (int32_t depth = 1; depth <= radius; ++depth) {
        for (Vertex u : b.layers[depth - 1]) {
            for (Vertex w : g.adj[u]) {
                if (!sc.seen(w)) {
                    sc.visit(w, depth);
                    b.layers[depth].push_back(w);
                }
            }
        }
        std::sort(b.layers[depth].begin(), b.layers[depth].end());
        b.layers[depth].erase(std::unique(b.layers[depth].begin(), b.layers[depth].end()),
                              b.layers[depth].end());
    }
    for (const auto& layer : b.layers) {
        for (Vertex u : layer) {
            for (int32_t k = 0; k < g.loops[u]; ++k) b.induced_edges.emplace_back(u, u);
            for (Vertex w : g.adj[u])
                if (w > u && sc.seen(w)) b.induced_edges.emplace_back(u, w);
        }
    }
    std::sort(b.induced_edges.begin(), b.induced_edges.end());
    return b;
}

}  // namespace

std::vector<Vertex> Ball::vertices() const {
    std::vector<Vertex> out;
    out.reserve(vertex_count());
    for (const auto& layer : layers) out.insert(out.end(), layer.begin(), layer.end());
    std::sort(out.begin(), out.end());
    return out;
}

size_t Ball::vertex_count() const {
    size_t c = 0;
    for (const auto& layer : layers) c += layer.size();
    return c;
}

Ball ball(const MultiGraph& g, Vertex center, int32_t radius) {
    return ball_impl(g, {center}, radius);
}

Ball ball_edge(const MultiGraph& g, Vertex u, Vertex v, int32_t radius) {
    if (u == v) throw precondition_error("edge ball requires two distinct endpoints");
    return ball_impl(g, {u, v}, radius);
}

namespace {

struct UnionFind {
    std::vector<int32_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int32_t find(int32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

int64_t cycle_rank(const Ball& b) {
    auto verts = b.vertices();
    // Local compaction so union-find is sized to the ball, not the host graph.
    auto local = [&verts](Vertex v) {
        return static_cast<int32_t>(std::lower_bound(verts.begin(), verts.end(), v) -
                                    verts.begin());
    };
    UnionFind uf(verts.size());
    int64_t components = static_cast<int64_t>(verts.size());
    for (auto [u, v] : b.induced_edges)
        if (u != v && uf.unite(local(u), local(v))) --components;
    return static_cast<int64_t>(b.induced_edges.size()) -
           static_cast<int64_t>(verts.size()) + components;
}

namespace {

// Shortest cycle through the BFS tree rooted at s, considering only cycles of
// length <= limit. Standard trick: the first non-tree edge seen between
// vertices at depths i and j closes a cycle of length i + j + 1.
int32_t shortest_cycle_from(const MultiGraph& g, Vertex s, int32_t limit) {
    auto& sc = tl_scratch;
    sc.prepare(static_cast<size_t>(g.n));
    static thread_local std::vector<Vertex> queue;
    static thread_local std::vector<Vertex> parent;
    if (parent.size() < static_cast<size_t>(g.n)) parent.resize(static_cast<size_t>(g.n));
    queue.clear();
    queue.push_back(s);
    sc.visit(s, 0);
    parent[static_cast<size_t>(s)] = -1;
    int32_t best = kInfiniteGirth;
    size_t head = 0;
    int32_t max_depth = limit / 2;  // deeper tree edges cannot improve on limit
    while (head < queue.size()) {
        Vertex u = queue[head++];
        int32_t du = sc.dist_of(u);
        bool parent_skipped = false;
        for (Vertex w : g.adj[u]) {
            if (w == parent[static_cast<size_t>(u)] && !parent_skipped) {
                parent_skipped = true;  // skip exactly one incidence of the tree edge
                continue;
            }
            if (!sc.seen(w)) {
                if (du + 1 <= max_depth) {
                    sc.visit(w, du + 1);
                    parent[static_cast<size_t>(w)] = u;
                    queue.push_back(w);
                }
            } else {
                best = std::min(best, du + sc.dist_of(w) + 1);
            }
        }
    }
    return best;
}

}  // namespace

std::optional<int32_t> girth_at_most(const MultiGraph& g, int32_t max_len) {
    for (Vertex v = 0; v < g.n; ++v)
        if (g.loops[v] > 0) return 1;
    for (Vertex v = 0; v < g.n; ++v) {
        const auto& row = g.adj[v];
        for (size_t i = 1; i < row.size(); ++i)
            if (row[i] == row[i - 1]) return 2;
    }
    if (max_len < 3) return std::nullopt;
    int32_t best = kInfiniteGirth;
    for (Vertex v = 0; v < g.n; ++v) {
        int32_t limit = std::min(best == kInfiniteGirth ? max_len : best - 1, max_len);
        if (limit < 3) break;
        int32_t c = shortest_cycle_from(g, v, limit);
        best = std::min(best, c);
    }
    if (best > max_len || best == kInfiniteGirth) return std::nullopt;
    return best;
}

int32_t girth(const MultiGraph& g) {
    // Any simple cycle has length <= n, so this cap is exact.
    auto r = girth_at_most(g, std::max<int32_t>(g.n, 2));
    return r ? *r : kInfiniteGirth;
}

bool is_connected(const MultiGraph& g) {
    if (g.n <= 1) return true;
    auto& sc = tl_scratch;
    sc.prepare(static_cast<size_t>(g.n));
    std::vector<Vertex> queue{0};
    sc.visit(0, 0);
    size_t head = 0, visited = 1;
    while (head < queue.size()) {
        Vertex u = queue[head++];
        for (Vertex w : g.adj[u]) {
            if (!sc.seen(w)) {
                sc.visit(w, 0);
                queue.push_back(w);
                ++visited;
            }
        }
    }
    return visited == static_cast<size_t>(g.n);
}

bool is_bipartite(const MultiGraph& g) {
    for (Vertex v = 0; v < g.n; ++v)
        if (g.loops[v] > 0) return false;  // a loop is an odd closed walk
    std::vector<int8_t> color(static_cast<size_t>(g.n), -1);
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < g.n; ++s) {
        if (color[static_cast<size_t>(s)] != -1) continue;
        color[static_cast<size_t>(s)] = 0;
        queue.assign(1, s);
        size_t head = 0;
        while (head < queue.size()) {
            Vertex u = queue[head++];
            for (Vertex w : g.adj[u]) {
                if (color[static_cast<size_t>(w)] == -1) {
                    color[static_cast<size_t>(w)] = static_cast<int8_t>(1 - color[static_cast<size_t>(u)]);
                    queue.push_back(w);
                } else if (color[static_cast<size_t>(w)] == color[static_cast<size_t>(u)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

int32_t distance_capped(const MultiGraph& g, Vertex u, Vertex v, int32_t cap) {
    if (u < 0 || u >= g.n || v < 0 || v >= g.n)
        throw precondition_error("distance endpoints out of range");
    if (u == v) return 0;
    auto& sc = tl_scratch;
    sc.prepare(static_cast<size_t>(g.n));
    std::vector<Vertex> queue{u};
    sc.visit(u, 0);
    size_t head = 0;
    while (head < queue.size()) {
        Vertex x = queue[head++];
        int32_t dx = sc.dist_of(x);
        if (dx >= cap) break;
        for (Vertex w : g.adj[x]) {
            if (!sc.seen(w)) {
                if (w == v) return dx + 1;
                sc.visit(w, dx + 1);
                queue.push_back(w);
            }
        }
    }
    return kUnreachable;
}

int32_t distance(const MultiGraph& g, Vertex u, Vertex v) {
    return distance_capped(g, u, v, std::max<int32_t>(g.n, 1));
}

}  // namespace expander
