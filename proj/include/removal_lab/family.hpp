#pragma once

#include <optional>
#include <string>
#include <vector>

#include "removal_lab/count.hpp"
#include "removal_lab/graph.hpp"

namespace rlab {

// A forbidden family.  `members` are matched as induced subgraphs.  The two
// cycle lists extend a family by every supergraph of the named cycle: a graph
// has an induced copy of some supergraph of C_a exactly when it has C_a as a
// (not necessarily induced) subgraph, so matching runs a plain cycle search.
// `symbolic_cycles` records lengths too large to ever match at feasible sizes
// (kept so serialized families stay faithful to their definition).
struct graph_family {
    std::vector<graph> members;
    std::vector<long long> subgraph_cycles;
    std::vector<std::string> symbolic_cycles;

    bool fully_explicit() const { return subgraph_cycles.empty() && symbolic_cycles.empty(); }
};

struct family_witness {
    bool induced_member = false;  // otherwise a cycle subgraph
    size_t member_index = 0;      // index into members or subgraph_cycles
    std::vector<int> vertices;    // embedding of the matched pattern
};

// First match across the family: explicit members in order, then cycle
// subgraphs in order.  Cycles longer than the host are skipped.
std::optional<family_witness> find_family_witness(const graph& g, const graph_family& f,
                                                  unsigned long long node_budget = default_node_budget);

// cycle of exact length len as a subgraph; lexicographic-first embedding
std::optional<std::vector<int>> find_cycle_subgraph(const graph& g, int len,
                                                    unsigned long long node_budget = default_node_budget);

graph_family parse_family(const std::string& json_text);
std::string family_to_json(const graph_family& f);
graph_family load_family_file(const std::string& path);

} // namespace rlab
