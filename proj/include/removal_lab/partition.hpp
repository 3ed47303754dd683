#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "removal_lab/count.hpp"
#include "removal_lab/graph.hpp"
#include "removal_lab/rational.hpp"

namespace rlab {

// Independent row and column partitions of the adjacency matrix; blocks are
// the products R_i x C_j.  The diagonal carries zeros and is included in a
// block whenever rows and columns overlap.
struct block_partition {
    std::vector<vertex_set> rows;
    std::vector<vertex_set> cols;
};

struct failing_block {
    int row = 0;       // for pair reports: the smaller part index
    int col = 0;       // for pair reports: the larger part index
    rational density;  // one-fraction of the block or pair
    rational weight;   // |R||C| / n^2
};

// A block (or disjoint pair) counts as homogeneous when its dominant value
// fills at least a (1 - delta)-fraction of the cells.  The report tracks the
// exact total weight of the failing blocks; pass means that weight stays
// within delta.
struct homogeneity_report {
    rational delta;
    rational non_homogeneous_weight;
    bool pass = false;
    bool vacuous = false;  // a one-part equipartition has no pairs to judge
    long long blocks_checked = 0;
    long long blocks_failing = 0;
    std::vector<failing_block> failing;  // capped at failing_report_cap entries
};

inline constexpr size_t failing_report_cap = 64;

homogeneity_report check_block_partition(const graph& g, const block_partition& p,
                                         rational delta);

// pair weights only; densities inside a part never enter the verdict
homogeneity_report check_equipartition(const graph& g, const equipartition& q, rational delta);

struct found_partition {
    block_partition partition;
    homogeneity_report report;
};

// Iterative refinement from the one-block partition: the heaviest failing
// block is split on its larger side by ordering that side's elements by
// in-block density (ties by restricted adjacency pattern, then index) and
// cutting at the distinct-key boundary nearest the middle.  Identical rows
// are never separated, so exact blowups refine to their classes.  Absence
// means the part budget ran out; any returned partition is re-checked.
std::optional<found_partition> find_homogeneous_partition(const graph& g, rational delta,
                                                          int max_parts);

// Either a homogeneous partition exists within an internal part budget, or
// every small 0/1 pattern should appear among sampled submatrices.  The probe
// reports the empirically rarest k x k pattern; it measures, it proves
// nothing.
struct dichotomy_probe_report {
    bool partition_branch = false;
    std::optional<found_partition> partition;
    int k = 0;
    long long trials = 0;
    std::vector<long long> pattern_hits;  // indexed by row-major bit pattern
    int min_pattern = -1;
    long long min_hits = 0;
    rational min_frequency;
};

dichotomy_probe_report dichotomy_probe(const graph& g, int k, rational delta, long long trials,
                                       uint64_t seed);

// Checker for a regular-subsets certificate: an equipartition Q with one
// representative subset U_i inside each part, judged by
//   1. all but at most delta*q^2 pairs have (Q_i,Q_j) delta-homogeneous with
//      the dominant value of (U_i,U_j) matching,
//   2. every pair (U_i,U_j) is gamma-homogeneous,
//   3. every |U_i| meets the supplied size bound.
struct subset_certificate_report {
    long long pair_count = 0;
    long long exceptional_pairs = 0;  // pairs failing clause 1
    rational exceptional_allowance;   // delta * q^2
    long long gamma_failures = 0;
    long long min_subset_size = 0;
    bool condition1 = false;
    bool condition2 = false;
    bool condition3 = false;
    bool pass = false;
};

subset_certificate_report check_representative_subsets(const graph& g, const equipartition& q,
                                                       const std::vector<vertex_set>& reps,
                                                       rational delta, rational gamma,
                                                       long long min_size);

// Pipeline output: m pairwise disjoint sets whose pair densities all sit on
// one side of the alpha threshold, verified exactly before returning.
struct uniform_family_result {
    std::vector<vertex_set> parts;
    bool dense = false;  // true: all pair densities >= 1 - alpha; false: all <= alpha
    rational beta;       // homogeneity level used for auxiliary-graph edges
};

std::optional<uniform_family_result> find_uniform_family(
    const graph& g, int m, rational alpha, unsigned long long budget = default_node_budget);

} // namespace rlab
