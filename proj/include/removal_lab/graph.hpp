#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "removal_lab/errors.hpp"
#include "removal_lab/rational.hpp"

namespace rlab {

// Vertices of interest, sorted ascending, no duplicates.
using vertex_set = std::vector<int>;

// Simple undirected graph, no loops, adjacency kept as bit-packed rows.
// Values are treated as immutable once built; all the operations below
// return fresh graphs.
struct graph {
    int n = 0;
    int words = 0;
    std::vector<uint64_t> bits;  // row-major, n rows of `words` 64-bit words

    graph() = default;
    explicit graph(int nv) : n(nv), words((nv + 63) / 64), bits(size_t(n) * words, 0) {
        if (nv < 0) fail(errc::parameter, "graph with negative order");
    }

    const uint64_t* row(int v) const { return bits.data() + size_t(v) * words; }
    uint64_t* row(int v) { return bits.data() + size_t(v) * words; }

    bool has_edge(int u, int v) const {
        return (row(u)[v >> 6] >> (v & 63)) & 1;
    }

    void add_edge(int u, int v) {
        if (u == v) fail(errc::parameter, "loop edge");
        if (u < 0 || v < 0 || u >= n || v >= n) fail(errc::parameter, "edge endpoint out of range");
        row(u)[v >> 6] |= uint64_t(1) << (v & 63);
        row(v)[u >> 6] |= uint64_t(1) << (u & 63);
    }

    void remove_edge(int u, int v) {
        row(u)[v >> 6] &= ~(uint64_t(1) << (v & 63));
        row(v)[u >> 6] &= ~(uint64_t(1) << (u & 63));
    }

    void toggle_edge(int u, int v) {
        if (has_edge(u, v)) remove_edge(u, v); else add_edge(u, v);
    }

    int degree(int v) const {
        int d = 0;
        for (int w = 0; w < words; ++w) d += std::popcount(row(v)[w]);
        return d;
    }

    long long edge_count() const {
        long long total = 0;
        for (int v = 0; v < n; ++v) total += degree(v);
        return total / 2;
    }

    std::vector<std::pair<int, int>> edges() const;

    friend bool operator==(const graph& a, const graph& b) { return a.n == b.n && a.bits == b.bits; }
    friend bool operator!=(const graph& a, const graph& b) { return !(a == b); }

    static graph from_edges(int n, const std::vector<std::pair<int, int>>& es);
};

// factories used all over the tests and generators
graph complete_graph(int n);
graph empty_graph(int n);
graph cycle_graph(int n);   // n >= 3
graph path_graph(int n);    // n >= 1, n-1 edges
graph complete_bipartite(int a, int b);
graph random_graph(int n, uint64_t seed);                     // each pair present with prob 1/2
graph random_graph(int n, rational p, uint64_t seed);

void check_vertex_set(const graph& g, const vertex_set& x, const char* what);
bool sets_disjoint(const vertex_set& x, const vertex_set& y);

bool is_clique(const graph& g, const vertex_set& x);
bool is_independent(const graph& g, const vertex_set& x);

long long edges_within(const graph& g, const vertex_set& x);
long long edges_between(const graph& g, const vertex_set& x, const vertex_set& y);  // x, y disjoint

// d(X) = e(X) / C(|X|,2); requires |X| >= 2
rational density_within(const graph& g, const vertex_set& x);
// d(X,Y) = e(X,Y) / (|X||Y|); requires X,Y nonempty and disjoint
rational density_between(const graph& g, const vertex_set& x, const vertex_set& y);

struct homogeneity_verdict {
    rational density;
    int dominant = 0;       // 1 when density >= 1/2, ties go to 1
    bool homogeneous = false;
};

// a disjoint pair (X,Y) is delta-homogeneous when its density is within delta
// of its dominant value
homogeneity_verdict homogeneity(const graph& g, const vertex_set& x, const vertex_set& y,
                                rational delta);

graph complement(const graph& g);
graph induced_subgraph(const graph& g, const vertex_set& x);  // vertex i of result = x[i]

// Blowup description: vertex v of the base becomes a part of size sizes[v];
// parts flagged in clique_part become cliques, the rest independent sets;
// cross pairs are complete exactly when the base has the edge.
struct blowup_spec {
    std::vector<int> sizes;
    std::vector<uint8_t> clique_part;  // empty means all-independent (plain blowup)
};

graph blowup(const graph& g, const blowup_spec& spec);
graph uniform_blowup(const graph& g, int s);  // plain, every part of size s

// which part each blowup vertex came from, in construction order
std::vector<vertex_set> blowup_parts(const blowup_spec& spec);

struct equipartition {
    std::vector<vertex_set> parts;  // sizes differ by at most one
};

// seeded random equipartition of 0..n-1 into q parts
equipartition make_equipartition(int n, int q, uint64_t seed);

} // namespace rlab
