#include "removal_lab/graph.hpp"

#include <algorithm>

#include "removal_lab/rng.hpp"

namespace rlab {

std::vector<std::pair<int, int>> graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
}

graph graph::from_edges(int n, const std::vector<std::pair<int, int>>& es) {
    graph g(n);
    for (auto [u, v] : es) g.add_edge(u, v);
    return g;
}

graph complete_graph(int n) {
    graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

graph empty_graph(int n) { return graph(n); }

graph cycle_graph(int n) {
    if (n < 3) fail(errc::parameter, "cycle needs at least 3 vertices");
    graph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

graph path_graph(int n) {
    if (n < 1) fail(errc::parameter, "path needs at least 1 vertex");
    graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

graph complete_bipartite(int a, int b) {
    graph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
    return g;
}

graph random_graph(int n, uint64_t seed) {
    graph g(n);
    rng r(seed);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (r.coin()) g.add_edge(u, v);
    return g;
}

graph random_graph(int n, rational p, uint64_t seed) {
    if (p < rational(0) || p > rational(1)) fail(errc::parameter, "edge probability out of [0,1]");
    graph g(n);
    rng r(seed);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((long long)r.below(uint64_t(p.den)) < p.num) g.add_edge(u, v);
    return g;
}

void check_vertex_set(const graph& g, const vertex_set& x, const char* what) {
    int prev = -1;
    for (int v : x) {
        if (v < 0 || v >= g.n) fail(errc::parameter, std::string(what) + ": vertex out of range");
        if (v <= prev) fail(errc::parameter, std::string(what) + ": not sorted strictly ascending");
        prev = v;
    }
}

bool sets_disjoint(const vertex_set& x, const vertex_set& y) {
    size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] == y[j]) return false;
        if (x[i] < y[j]) ++i; else ++j;
    }
    return true;
}

bool is_clique(const graph& g, const vertex_set& x) {
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
            if (!g.has_edge(x[i], x[j])) return false;
    return true;
}

bool is_independent(const graph& g, const vertex_set& x) {
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
            if (g.has_edge(x[i], x[j])) return false;
    return true;
}

long long edges_within(const graph& g, const vertex_set& x) {
    long long e = 0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
            e += g.has_edge(x[i], x[j]);
    return e;
}

long long edges_between(const graph& g, const vertex_set& x, const vertex_set& y) {
    long long e = 0;
    for (int u : x)
        for (int v : y) e += g.has_edge(u, v);
    return e;
}

rational density_within(const graph& g, const vertex_set& x) {
    check_vertex_set(g, x, "density_within");
    long long k = (long long)x.size();
    if (k < 2) fail(errc::degenerate, "density_within needs at least 2 vertices");
    return rational(edges_within(g, x), k * (k - 1) / 2);
}

rational density_between(const graph& g, const vertex_set& x, const vertex_set& y) {
    check_vertex_set(g, x, "density_between");
    check_vertex_set(g, y, "density_between");
    if (x.empty() || y.empty()) fail(errc::degenerate, "density_between with empty side");
    if (!sets_disjoint(x, y)) fail(errc::parameter, "density_between: sets overlap");
    return rational(edges_between(g, x, y), (long long)x.size() * (long long)y.size());
}

homogeneity_verdict homogeneity(const graph& g, const vertex_set& x, const vertex_set& y,
                                rational delta) {
    homogeneity_verdict v;
    v.density = density_between(g, x, y);
    v.dominant = v.density >= rational(1, 2) ? 1 : 0;
    rational off = v.dominant ? rational(1) - v.density : v.density;
    v.homogeneous = off <= delta;
    return v;
}

graph complement(const graph& g) {
    graph c(g.n);
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (!g.has_edge(u, v)) c.add_edge(u, v);
    return c;
}

graph induced_subgraph(const graph& g, const vertex_set& x) {
    check_vertex_set(g, x, "induced_subgraph");
    graph h((int)x.size());
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
            if (g.has_edge(x[i], x[j])) h.add_edge((int)i, (int)j);
    return h;
}

std::vector<vertex_set> blowup_parts(const blowup_spec& spec) {
    std::vector<vertex_set> parts;
    int next = 0;
    for (int s : spec.sizes) {
        vertex_set p;
        for (int i = 0; i < s; ++i) p.push_back(next++);
        parts.push_back(std::move(p));
    }
    return parts;
}

graph blowup(const graph& g, const blowup_spec& spec) {
    if ((int)spec.sizes.size() != g.n) fail(errc::parameter, "blowup: one size per base vertex");
    if (!spec.clique_part.empty() && (int)spec.clique_part.size() != g.n)
        fail(errc::parameter, "blowup: clique flags size mismatch");
    long long total = 0;
    for (int s : spec.sizes) {
        if (s < 0) fail(errc::parameter, "blowup: negative part size");
        total += s;
    }
    if (total > 200000) fail(errc::scale, "blowup: result too large");
    auto parts = blowup_parts(spec);
    graph h((int)total);
    for (int v = 0; v < g.n; ++v) {
        if (!spec.clique_part.empty() && spec.clique_part[v])
            for (size_t i = 0; i < parts[v].size(); ++i)
                for (size_t j = i + 1; j < parts[v].size(); ++j)
                    h.add_edge(parts[v][i], parts[v][j]);
        for (int u = v + 1; u < g.n; ++u)
            if (g.has_edge(v, u))
                for (int a : parts[v])
                    for (int b : parts[u]) h.add_edge(a, b);
    }
    return h;
}

graph uniform_blowup(const graph& g, int s) {
    blowup_spec spec;
    spec.sizes.assign(g.n, s);
    return blowup(g, spec);
}

equipartition make_equipartition(int n, int q, uint64_t seed) {
    if (q < 1 || q > n) fail(errc::parameter, "equipartition: need 1 <= q <= n");
    auto order = sample_distinct(n, n, seed);
    equipartition eq;
    eq.parts.resize(q);
    int big = n % q, size_hi = n / q + 1, size_lo = n / q;
    int at = 0;
    for (int i = 0; i < q; ++i) {
        int s = i < big ? size_hi : size_lo;
        vertex_set p(order.begin() + at, order.begin() + at + s);
        std::sort(p.begin(), p.end());
        eq.parts[i] = std::move(p);
        at += s;
    }
    return eq;
}

} // namespace rlab
