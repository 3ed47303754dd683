#pragma once

#include <optional>
#include <string>
#include <vector>

#include "removal_lab/count.hpp"
#include "removal_lab/family.hpp"
#include "removal_lab/graph.hpp"
#include "removal_lab/homomorphism.hpp"
#include "removal_lab/rational.hpp"

namespace rlab {

// Subset of {1..m} with no nontrivial solution to
// a1*s1 + ... + al*sl = (a1+...+al)*s(l+1) for 2 <= l, ai >= 1, sum ai <= k.
// Built by the digit-shell method: base-b digits below q are carry-free under
// such sums, and a fixed squared digit norm forces every solution to collapse.
struct behrend_set {
    long long m = 0;
    long long k = 0;
    std::vector<long long> members;   // sorted, subset of {1..m}
    long long base = 0;               // b
    long long digits = 0;             // d
    long long digit_cap = 0;          // q, digits range over [0,q)
    long long shell = 0;              // squared norm of the chosen shell
    bool verified_exhaustive = false;
};

struct convex_free_violation {
    std::vector<long long> coeffs;
    std::vector<long long> values;    // s1..sl followed by s(l+1)
};

struct convex_free_verdict {
    bool exhaustive = false;
    unsigned long long checked = 0;
    std::vector<convex_free_violation> violations;  // capped at a few witnesses
};

convex_free_verdict verify_convex_free(const std::vector<long long>& s, long long k,
                                       unsigned long long budget = default_node_budget,
                                       uint64_t seed = 1);

behrend_set make_behrend_set(long long m, long long k,
                             unsigned long long verify_budget = default_node_budget);

// Union of pairwise edge-disjoint h-cliques A(x,s) = {x, x+s, .., x+(h-1)s}
// over x in {1..m}, s in a behrend_set with k = h-1, the value x+j*s living in
// layer j+1 of size (j+1)*m.  Layers are independent sets and, because the
// clique differences form a convex-free set, every cycle that climbs through
// the layers stays inside a single registry clique.
struct layered_clique_graph {
    int h = 0;
    long long m = 0;
    rational delta;                      // requested clique density
    behrend_set s;
    graph g;
    std::vector<vertex_set> layers;      // layer j (0-based) has (j+1)*m vertices
    std::vector<int> layer_of;           // vertex -> 0-based layer
    std::vector<vertex_set> cliques;     // registry, each sorted by layer
    bool cycle_check_ran = false;
    unsigned long long layered_cycles = 0;  // valid when cycle_check_ran
    bool strong_cycle_property = false;     // every layered cycle inside one clique
};

struct layered_options {
    std::optional<long long> m_hint;
    long long m_cap = 512;
    unsigned long long budget = default_node_budget;
    bool check_cycles = true;            // skipped automatically past desk scale
};

layered_clique_graph layered_cliques(int h, rational delta, layered_options opts = {});

// Hard instance wrapper.  The kind tokens thm4 | thm13 | oddcycle are part of
// the CLI contract and name the three generators below in order.
struct hard_instance {
    std::string kind;
    graph g;
    long long n_requested = 0;
    long long n_effective = 0;
    rational epsilon;                    // requested farness (oddcycle: achieved)
    rational epsilon_achieved;           // pack size / n_effective^2
    graph pattern;                       // far-target pattern placed by the packing
    graph_family forbidden;              // family context the instance is far from
    packing pack;
    std::vector<vertex_set> parts;       // layout witness (see each generator)
    std::optional<hom_map> hom;          // kind thm13: certificate g -> hom_target
    graph hom_target;
    int h = 0;
    long long m = 0;
    long long r = 0;                     // base graph order
    long long clique_count = 0;
    bool structure_verified = false;
    bool exhaustive_small_checks = false;  // oddcycle: ran the tiny-scale counts
    long long odd_girth = 0;               // oddcycle: breadth-first measurement
};

// complement of `pairs` disjoint edges plus one universal vertex; the pattern
// whose induced-freeness the thm4 instance preserves
graph co_matching_apex(int pairs = 3);

// Eight-layer overlay: blocks over a layered clique graph, odd layers merged
// into cliques, even layers independent, and a plain 8-cycle blowup installed
// across every registry clique.  Far from induced-8-cycle-freeness while the
// layout keeps it co-matching-apex-free.  parts = the eight layer blocks.
hard_instance cycle8_overlay_instance(long long n, rational epsilon,
                                      std::optional<long long> m_hint = {},
                                      layered_options opts = {});

// true iff odd parts are cliques, even parts independent, and edges only run
// between circularly consecutive parts
bool check_cycle8_layout(const graph& g, const std::vector<vertex_set>& parts);

// Core-patterned overlay: induced copies of h_pattern placed on the registry
// cliques of a layered clique graph, then a plain block blowup.  Comes with a
// homomorphism certificate onto the core of h_pattern.  parts = preimages of
// the core vertices.
hard_instance core_pattern_instance(const graph& h_pattern, rational epsilon, long long n,
                                    std::optional<long long> m_hint = {},
                                    layered_options opts = {});

// Plain balanced blowup of an odd cycle: short odd cycles and induced 6-cycles
// are absent while transversal k-cycles give a quadratic packing.
hard_instance odd_cycle_blowup_instance(long long k, long long n,
                                        unsigned long long budget = default_node_budget);

// {C6} plus ever-longer odd cycle lengths a1 = 3, a(i+1) = 2^(2(ai+2)^2) + 1,
// matched as plain cycle subgraphs (equivalent to induced supergraph closure).
// Lengths past 64 bits are kept symbolic; an override replaces the sequence.
graph_family escalating_cycle_family(int levels,
                                     const std::vector<long long>* override_lengths = nullptr);

} // namespace rlab
