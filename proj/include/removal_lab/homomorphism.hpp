#pragma once

#include <optional>
#include <string>
#include <vector>

#include "removal_lab/family.hpp"
#include "removal_lab/graph.hpp"

namespace rlab {

// total map source vertex -> target vertex; edges must land on edges
struct hom_map {
    std::vector<int> assignment;
};

bool verify_homomorphism(const graph& source, const graph& target, const hom_map& f);

// Exhaustive backtracking per connected component, vertices in breadth-first
// order so nearly every assignment is pruned by an already-placed neighbor.
// Absence is certified (the search is complete).
std::optional<hom_map> find_homomorphism(const graph& source, const graph& target,
                                         unsigned long long node_budget = default_node_budget);

struct core_result {
    graph core;             // induced on `embedding`, vertices renumbered by position
    vertex_set embedding;   // host vertices inducing the core
    hom_map retraction;     // host -> host, image inside embedding, automorphism on it
};

// Smallest induced subgraph receiving a homomorphism from g, found by
// deleting one vertex at a time while a retraction exists.  For hosts of
// order <= 9 minimality is re-verified by exhaustive subset search.
core_result core_of(const graph& g, int order_cap = 12,
                    unsigned long long node_budget = default_node_budget);

// lexicographically least graph6 string over all relabelings; order <= 9
std::string canonical_graph6(const graph& g);

struct core_poset_result {
    std::vector<int> member_class;            // family member -> class index
    std::vector<graph> classes;               // distinct cores up to isomorphism
    // leq[i][j]: class i precedes class j, i.e. some homomorphism classes[j] -> classes[i]
    std::vector<std::vector<uint8_t>> leq;
    int chosen_class = -1;                    // maximal element, ties by least canonical form
    graph kf;
};

core_poset_result core_poset(const graph_family& f, int order_cap = 12,
                             unsigned long long node_budget = default_node_budget);

// Restriction witness: the core embedding X of F, verified to be mapped
// isomorphically onto K by f.  A failure means K was not a maximal core for
// the family F came from, and raises a consistency error.
vertex_set core_restriction_witness(const graph& f_graph, const graph& k_graph, const hom_map& f,
                                 unsigned long long node_budget = default_node_budget);

} // namespace rlab
