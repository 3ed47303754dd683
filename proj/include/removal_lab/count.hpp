#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "removal_lab/graph.hpp"

namespace rlab {

using bigint = boost::multiprecision::cpp_int;

enum class copy_mode { induced, subgraph };

// map from pattern vertex i to host vertex vertices[i]
struct copy_record {
    std::vector<int> vertices;
};

struct count_result {
    bigint copies;            // unlabeled: labeled / |Aut(pattern)|
    unsigned long long labeled = 0;
    unsigned long long aut = 0;
};

inline constexpr unsigned long long default_node_budget = 200'000'000ull;

// automorphism count by exhaustive permutation, pattern order <= 10
unsigned long long automorphism_count(const graph& h);

// exact isomorphism test by exhaustive permutation with degree-sequence pruning
bool isomorphic(const graph& a, const graph& b);

// Embedding counts via backtracking in pattern-index order.  Pattern order is
// capped at 8; the node budget aborts oversized hosts with a scale error
// rather than returning a partial count.
count_result count_copies(const graph& g, const graph& pattern, copy_mode mode,
                          unsigned long long node_budget = default_node_budget);

// First embedding in assignment-lexicographic order, if any.
std::optional<copy_record> find_copy(const graph& g, const graph& pattern, copy_mode mode,
                                     unsigned long long node_budget = default_node_budget);

inline std::optional<copy_record> find_induced_copy(const graph& g, const graph& pattern,
                                                    unsigned long long node_budget = default_node_budget) {
    return find_copy(g, pattern, copy_mode::induced, node_budget);
}

// Two-sided pattern: only cross pairs are constrained.  A copy in G is an
// injection of both sides where cross adjacency matches `cross` exactly;
// within-side edges of G are ignored.  Counts are labeled (ordered) maps.
struct bipartite_pattern {
    int s = 0, t = 0;
    std::vector<uint8_t> cross;  // s*t entries, cross[i*t + j] for (left i, right j)

    bool at(int i, int j) const { return cross[size_t(i) * t + j]; }
};

bigint count_induced_bipartite_copies(const graph& g, const bipartite_pattern& p,
                                      unsigned long long node_budget = default_node_budget);

std::optional<copy_record> find_induced_bipartite_copy(const graph& g, const bipartite_pattern& p,
                                                       unsigned long long node_budget = default_node_budget);

// Pair-disjoint packing: every two copies share at most one vertex, so each
// pair edit can break at most one copy and the packing size lower-bounds the
// edit distance.
struct packing {
    graph pattern;
    copy_mode mode = copy_mode::induced;
    std::vector<copy_record> copies;
};

// greedy over the embedding enumeration in assignment order; maximal by inclusion
packing greedy_pair_disjoint_packing(const graph& g, const graph& pattern, copy_mode mode,
                                     unsigned long long node_budget = default_node_budget);

// throws consistency error naming the first violated copy or pair, if any
void verify_packing(const graph& g, const packing& p);

// Greedy family of h-tuples over {0..m-1}, lexicographic, any two agreeing in
// at most one coordinate.  Size is at least m^2/h^2 (and at least 1 for m >= 1).
std::vector<std::vector<int>> tuple_collection(int m, int h,
                                               unsigned long long enum_budget = default_node_budget);

// Same agreement guarantee via explicit arithmetic progressions; linear-time
// in its output, for ranges where the greedy enumeration is out of reach.
std::vector<std::vector<int>> ap_tuple_collection(int m, int h);

// Cycles v_1..v_t with v_j in layers[idx[j]-1] (idx 1-based ascending, t >= 3),
// consecutive edges plus the closing edge.  Visits each such cycle exactly once.
unsigned long long enumerate_layered_cycles(
    const graph& g, const std::vector<vertex_set>& layers, const std::vector<int>& idx,
    unsigned long long node_budget,
    const std::function<void(const std::vector<int>&)>& visit);

unsigned long long count_layered_cycles(const graph& g, const std::vector<vertex_set>& layers,
                                        const std::vector<int>& idx,
                                        unsigned long long node_budget = default_node_budget);

} // namespace rlab
