#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "removal_lab/count.hpp"
#include "removal_lab/family.hpp"
#include "removal_lab/graph.hpp"
#include "removal_lab/rational.hpp"

namespace rlab {

// One run of the sampling tester: q distinct vertices drawn uniformly, reject
// exactly when the induced sample carries a family witness.  Heredity makes
// this one-sided: a graph with no witness can never be rejected.
struct tester_outcome {
    bool reject = false;
    vertex_set sample;                       // sorted host vertex ids
    std::optional<family_witness> witness;   // vertices translated to host ids
};

tester_outcome sample_tester(const graph& g, const graph_family& f, int q, uint64_t seed,
                             unsigned long long budget = default_node_budget);

// Aggregated detection statistics.  The confidence interval is a 95% Wilson
// interval; the two threshold flags are decided by exact integer arithmetic
// rather than the floating-point interval endpoints.
struct test_report {
    int sample_size = 0;
    long long trials = 0;
    long long rejections = 0;
    rational frequency;
    double ci_low = 0.0;
    double ci_high = 0.0;
    // Wilson lower bound at or above 2/3: the detection claim holds with noise
    // to spare.  Upper bound reaching 2/3: the data cannot refute the claim.
    bool lower_meets_two_thirds = false;
    bool upper_reaches_two_thirds = false;
    uint64_t seed = 0;
};

// Per-trial seeds derive from (seed, trial index), so the counts are
// identical for any thread count.
test_report detection_probability(const graph& g, const graph_family& f, int q, long long trials,
                                  uint64_t seed, int threads = 1,
                                  unsigned long long budget = default_node_budget);

// Pure aggregation step shared by every experiment: frequency, interval and
// threshold flags from a rejection count.
test_report summarize_detection(int sample_size, long long trials, long long rejections,
                                uint64_t seed);

enum class farness_kind { packing_bound, exact };

// Lower bound (or exact value) for the number of pair edits needed to reach
// an induced-family-free graph.  Pair-disjoint copies pin distinct edits, so
// a verified packing certifies its size as a bound.
struct farness_certificate {
    farness_kind kind = farness_kind::packing_bound;
    long long value = 0;
    rational epsilon_equivalent;     // value / n^2
    std::optional<packing> pack;     // present for packing certificates
};

// Designated pattern: members[member] when explicit members exist, otherwise
// the cycle at subgraph_cycles[member].  A supplied packing is verified and
// used as-is instead of running the greedy search.
farness_certificate epsilon_far_lower_bound(const graph& g, const graph_family& f,
                                            size_t member = 0,
                                            std::optional<packing> supplied = std::nullopt,
                                            unsigned long long budget = default_node_budget);

inline constexpr int exact_distance_cap = 7;

// Minimum symmetric difference against any family-free graph on the same
// vertices: iterative deepening over toggle sets from the packing floor.
farness_certificate exact_edit_distance(const graph& g, const graph_family& f,
                                        unsigned long long budget = default_node_budget);

// Shared by the sampling experiments: the formula-driven sample size, its
// clamp to the graph order, and the detection statistics at that size.
struct sample_experiment_report {
    long long requested_sample = 0;
    int sample_size = 0;
    test_report stats;
};

// Dense-pair sampling experiment: pairwise disjoint sets w, one per pattern
// vertex, each of size at least lambda*n, cross densities within 1/(2r^2) of
// their pattern value.  Samples of ceil(9r/lambda) vertices are then checked
// for an induced pattern copy.
sample_experiment_report counting_lemma_experiment(const graph& g, const graph& pattern,
                                                   const std::vector<vertex_set>& w,
                                                   rational lambda, long long trials,
                                                   uint64_t seed);

// Cross-pattern sampling experiment at sample size ceil(4k/alpha): the
// precondition (at least alpha * n^(2k) induced two-sided copies) is verified
// exactly when the count fits the budget, otherwise the caller must assert it.
sample_experiment_report bipartite_sample_experiment(const graph& g, const bipartite_pattern& h,
                                                     rational alpha, long long trials,
                                                     uint64_t seed,
                                                     bool precondition_asserted = false,
                                                     unsigned long long budget = default_node_budget);

struct curve_instance {
    std::string label;
    graph g;
    rational epsilon;   // the farness the instance was built for; 0 for free instances
};

struct curve_row {
    std::string label;
    rational epsilon;
    std::vector<int> grid;             // the evaluated sample sizes (q <= n)
    std::vector<rational> frequency;   // parallel to grid
    std::optional<int> q_star;         // least q with frequency >= 2/3
};

// Detection frequency swept over a sample-size grid, one row per instance;
// q_star absent means censored (never reached 2/3 on the grid).
std::vector<curve_row> tester_curve(const std::vector<curve_instance>& instances,
                                    const graph_family& f, const std::vector<int>& q_grid,
                                    long long trials, uint64_t seed, int threads = 1);

// Blowup farness experiment: for a cycle with a homomorphism into the base
// graph, certify how far the n/k-blowup of the base is from having no such
// cycle subgraph, and compare against the 1/(2k^2) farness target.
struct farness_comparison {
    farness_certificate certificate;
    rational target;
    bool meets = false;
    long long n_effective = 0;
};

farness_comparison blowup_farness_experiment(const graph& base, const graph& cycle, long long n,
                                             unsigned long long budget = default_node_budget);

} // namespace rlab
