#pragma once

#include <optional>
#include <vector>

#include "removal_lab/count.hpp"
#include "removal_lab/family.hpp"
#include "removal_lab/graph.hpp"

namespace rlab {

struct bipartition {
    vertex_set left, right;
};

// proper 2-coloring by breadth-first layering, absent when an odd cycle blocks it
std::optional<bipartition> is_bipartite(const graph& g);

// two cliques covering the vertices: bipartiteness of the complement, witness translated
std::optional<bipartition> is_cobipartite(const graph& g);

// clique + independent set cover, decided by the splittance of the sorted
// degree sequence; the witness is rebuilt and re-verified before returning
struct split_partition {
    vertex_set clique, independent;
};
std::optional<split_partition> is_split(const graph& g);

struct member_flags {
    bool bipartite = false, cobipartite = false, split = false;
};

struct family_conditions {
    std::vector<member_flags> per_member;
    bool has_bipartite = false, has_cobipartite = false, has_split = false;
    // all three kinds present: sufficient for a constant-size sample tester
    bool sufficient_for_easy_testing = false;
    // bipartite and co-bipartite present: necessary for one
    bool necessary_for_easy_testing = false;
};

family_conditions check_family_conditions(const graph_family& f);

struct homogeneous_set {
    vertex_set vertices;
    bool clique = false;
};

// pivot recursion: keep the larger of neighborhood / non-neighborhood,
// majority label wins; needs n >= 4^k
homogeneous_set ramsey_homogeneous_set(const graph& g, int k);

// largest d with d rows of the adjacency matrix (diagonal zero) shattered by
// columns; exhaustive with hereditary pruning, capped
int vc_dimension(const graph& g, int cap = 24);

// true iff every completion of the cross pattern (arbitrary within-side
// edges on both sides) contains an induced member of the family
bool verify_bipartite_obstruction(const bipartite_pattern& h, const graph_family& f,
                                  unsigned long long completion_cap = 1ull << 22);

// random cross patterns at edge probability 1/2; first verified pattern wins
std::optional<bipartite_pattern> search_bipartite_obstruction(const graph_family& f, int side,
                                                              int attempts, uint64_t seed,
                                                              unsigned long long completion_cap = 1ull << 22);

// Bounded witness that `candidate` can be blown up without creating family
// members: tries all part-decorations g (bit v set = part v becomes a clique)
// and accepts the lexicographically least g whose uniform s-blowups stay
// induced-family-free for every s <= s_max.  Not a proof for unbounded s.
std::optional<std::vector<uint8_t>> blowup_quality_witness(const graph_family& f,
                                                           const graph& candidate, int s_max);

} // namespace rlab
