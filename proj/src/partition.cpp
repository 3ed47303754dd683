#include "removal_lab/partition.hpp"

#include <algorithm>
#include <bit>

#include "removal_lab/rng.hpp"

namespace rlab {

namespace {

void check_delta(rational d, const char* what) {
    if (!(rational::make(0, 1) < d) || !(d < rational::make(1, 2)))
        fail(errc::parameter, std::string(what) + " must lie strictly between 0 and 1/2");
}

void check_partition(const graph& g, const std::vector<vertex_set>& parts, const char* what) {
    if (g.n < 1)
        fail(errc::parameter, "empty graph");
    if (parts.empty())
        fail(errc::parameter, std::string(what) + " has no parts");
    std::vector<uint8_t> seen((size_t)g.n, 0);
    long long covered = 0;
    for (const auto& part : parts) {
        if (part.empty())
            fail(errc::parameter, std::string(what) + " holds an empty part");
        check_vertex_set(g, part, what);
        for (int v : part) {
            if (seen[(size_t)v])
                fail(errc::parameter, std::string(what) + " parts overlap");
            seen[(size_t)v] = 1;
            ++covered;
        }
    }
    if (covered != g.n)
        fail(errc::parameter, std::string(what) + " does not cover the vertices");
}

std::vector<uint64_t> set_mask(const graph& g, const vertex_set& s) {
    std::vector<uint64_t> mask((size_t)g.words, 0);
    for (int v : s)
        mask[(size_t)(v >> 6)] |= uint64_t(1) << (v & 63);
    return mask;
}

// ones in the block rows x cols; loop bits stay zero, so overlapping row and
// column sets contribute a zero diagonal by construction
long long block_ones(const graph& g, const vertex_set& rows, const std::vector<uint64_t>& col_mask) {
    long long total = 0;
    for (int r : rows) {
        const uint64_t* row = g.row(r);
        for (int w = 0; w < g.words; ++w)
            total += std::popcount(row[w] & col_mask[(size_t)w]);
    }
    return total;
}

struct block_stats {
    long long ones = 0;
    long long cells = 0;
    bool homogeneous = false;
};

block_stats judge_block(const graph& g, const vertex_set& rows,
                        const std::vector<uint64_t>& col_mask, long long col_count,
                        rational delta) {
    block_stats s;
    s.ones = block_ones(g, rows, col_mask);
    s.cells = (long long)rows.size() * col_count;
    long long minority = std::min(s.ones, s.cells - s.ones);
    s.homogeneous = rational::make(minority, s.cells) <= delta;
    return s;
}

// order a side of a block by in-block density, identical-pattern groups kept
// together, and report the boundaries between distinct keys
struct side_order {
    std::vector<int> order;            // elements of the side, sorted by key
    std::vector<size_t> boundaries;    // cut positions between distinct keys
};

side_order order_side(const graph& g, const vertex_set& side, const vertex_set& other) {
    side_order out;
    std::vector<long long> degree(side.size(), 0);
    std::vector<uint64_t> mask = set_mask(g, other);
    for (size_t i = 0; i < side.size(); ++i) {
        const uint64_t* row = g.row(side[i]);
        for (int w = 0; w < g.words; ++w)
            degree[i] += std::popcount(row[w] & mask[(size_t)w]);
    }
    std::vector<size_t> idx(side.size());
    for (size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    auto pattern_cmp = [&](size_t a, size_t b) {
        for (int v : other) {
            bool ba = g.has_edge(side[a], v);
            bool bb = g.has_edge(side[b], v);
            if (ba != bb)
                return bb ? -1 : 1;
        }
        return 0;
    };
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        if (degree[a] != degree[b])
            return degree[a] < degree[b];
        int c = pattern_cmp(a, b);
        if (c != 0)
            return c < 0;
        return side[a] < side[b];
    });
    out.order.reserve(side.size());
    for (size_t i : idx)
        out.order.push_back(side[i]);
    for (size_t i = 1; i < idx.size(); ++i)
        if (degree[idx[i - 1]] != degree[idx[i]] || pattern_cmp(idx[i - 1], idx[i]) != 0)
            out.boundaries.push_back(i);
    return out;
}

// split `parts[which]` at the boundary nearest the middle; true on success
bool split_part(const graph& g, std::vector<vertex_set>& parts, size_t which,
                const vertex_set& other) {
    side_order so = order_side(g, parts[which], other);
    if (so.boundaries.empty())
        return false;
    size_t mid = so.order.size() / 2;
    size_t best = so.boundaries.front();
    for (size_t b : so.boundaries) {
        auto dist = [&](size_t x) { return x > mid ? x - mid : mid - x; };
        if (dist(b) < dist(best))
            best = b;
    }
    vertex_set low(so.order.begin(), so.order.begin() + (long)best);
    vertex_set high(so.order.begin() + (long)best, so.order.end());
    std::sort(low.begin(), low.end());
    std::sort(high.begin(), high.end());
    parts[which] = std::move(low);
    parts.insert(parts.begin() + (long)which + 1, std::move(high));
    return true;
}

// deterministic search for an m-subset of 0..w-1 whose pairs all carry the
// wanted color; lexicographic, bounded by the shared node budget
bool monochromatic_subset(const std::vector<std::vector<uint8_t>>& color, int m, uint8_t want,
                          unsigned long long& nodes, std::vector<int>& out) {
    int w = (int)color.size();
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int from) -> bool {
        if ((int)chosen.size() == m)
            return true;
        for (int v = from; v < w; ++v) {
            if (nodes == 0)
                return false;
            --nodes;
            bool ok = true;
            for (int u : chosen)
                if (color[(size_t)u][(size_t)v] != want) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            chosen.push_back(v);
            if (self(self, v + 1))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!rec(rec, 0))
        return false;
    out = chosen;
    return true;
}

} // namespace

homogeneity_report check_block_partition(const graph& g, const block_partition& p,
                                         rational delta) {
    check_delta(delta, "delta");
    check_partition(g, p.rows, "row partition");
    check_partition(g, p.cols, "column partition");

    homogeneity_report rep;
    rep.delta = delta;
    long long failing_cells = 0;
    for (size_t j = 0; j < p.cols.size(); ++j) {
        std::vector<uint64_t> mask = set_mask(g, p.cols[j]);
        for (size_t i = 0; i < p.rows.size(); ++i) {
            block_stats s = judge_block(g, p.rows[i], mask, (long long)p.cols[j].size(), delta);
            ++rep.blocks_checked;
            if (s.homogeneous)
                continue;
            ++rep.blocks_failing;
            failing_cells += s.cells;
            if (rep.failing.size() < failing_report_cap)
                rep.failing.push_back({(int)i, (int)j, rational::make(s.ones, s.cells),
                                       rational::make(s.cells, (long long)g.n * g.n)});
        }
    }
    rep.non_homogeneous_weight = rational::make(failing_cells, (long long)g.n * g.n);
    rep.pass = rep.non_homogeneous_weight <= delta;
    return rep;
}

homogeneity_report check_equipartition(const graph& g, const equipartition& q, rational delta) {
    check_delta(delta, "delta");
    check_partition(g, q.parts, "equipartition");
    size_t smallest = q.parts.front().size(), largest = smallest;
    for (const auto& part : q.parts) {
        smallest = std::min(smallest, part.size());
        largest = std::max(largest, part.size());
    }
    if (largest - smallest > 1)
        fail(errc::parameter, "part sizes differ by more than one");

    homogeneity_report rep;
    rep.delta = delta;
    if (q.parts.size() == 1) {
        // no cross pairs exist; flagged rather than judged
        rep.vacuous = true;
        rep.pass = true;
        rep.non_homogeneous_weight = rational::make(0, 1);
        return rep;
    }
    long long failing_cells = 0;
    for (size_t i = 0; i < q.parts.size(); ++i)
        for (size_t j = i + 1; j < q.parts.size(); ++j) {
            homogeneity_verdict v = homogeneity(g, q.parts[i], q.parts[j], delta);
            ++rep.blocks_checked;
            if (v.homogeneous)
                continue;
            ++rep.blocks_failing;
            long long cells = (long long)q.parts[i].size() * (long long)q.parts[j].size();
            failing_cells += cells;
            if (rep.failing.size() < failing_report_cap)
                rep.failing.push_back(
                    {(int)i, (int)j, v.density, rational::make(cells, (long long)g.n * g.n)});
        }
    rep.non_homogeneous_weight = rational::make(failing_cells, (long long)g.n * g.n);
    rep.pass = rep.non_homogeneous_weight <= delta;
    return rep;
}

std::optional<found_partition> find_homogeneous_partition(const graph& g, rational delta,
                                                          int max_parts) {
    check_delta(delta, "delta");
    if (g.n < 1)
        fail(errc::parameter, "empty graph");
    if (max_parts < 1)
        fail(errc::parameter, "need a positive part budget");

    vertex_set all((size_t)g.n);
    for (int v = 0; v < g.n; ++v)
        all[(size_t)v] = v;
    block_partition p;
    p.rows = {all};
    p.cols = {all};

    while (true) {
        homogeneity_report rep = check_block_partition(g, p, delta);
        if (rep.pass)
            return found_partition{std::move(p), std::move(rep)};

        // heaviest failing block, scanned fresh since the report caps its list
        long long best_cells = -1;
        size_t bi = 0, bj = 0;
        for (size_t j = 0; j < p.cols.size(); ++j) {
            std::vector<uint64_t> mask = set_mask(g, p.cols[j]);
            for (size_t i = 0; i < p.rows.size(); ++i) {
                block_stats s =
                    judge_block(g, p.rows[i], mask, (long long)p.cols[j].size(), delta);
                if (!s.homogeneous && s.cells > best_cells) {
                    best_cells = s.cells;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best_cells < 0)
            fail(errc::consistency, "failing report with no failing block");

        bool rows_first = p.rows[bi].size() >= p.cols[bj].size();
        bool split_done =
            rows_first ? (split_part(g, p.rows, bi, p.cols[bj]) ||
                          split_part(g, p.cols, bj, p.rows[bi]))
                       : (split_part(g, p.cols, bj, p.rows[bi]) ||
                          split_part(g, p.rows, bi, p.cols[bj]));
        if (!split_done)
            fail(errc::consistency, "non-homogeneous block with constant rows and columns");
        if ((int)p.rows.size() > max_parts || (int)p.cols.size() > max_parts)
            return std::nullopt;
    }
}

dichotomy_probe_report dichotomy_probe(const graph& g, int k, rational delta, long long trials,
                                       uint64_t seed) {
    check_delta(delta, "delta");
    if (k < 1)
        fail(errc::parameter, "pattern size must be positive");
    if (k > 3)
        fail(errc::scale, "pattern sweep supports k up to 3");
    if (trials < 1)
        fail(errc::parameter, "need at least one trial");
    if (g.n < k)
        fail(errc::parameter, "graph smaller than the pattern");

    dichotomy_probe_report rep;
    rep.k = k;
    rep.partition = find_homogeneous_partition(g, delta, std::min(g.n, 24));
    if (rep.partition.has_value()) {
        rep.partition_branch = true;
        return rep;
    }

    rep.trials = trials;
    rep.pattern_hits.assign(size_t(1) << (k * k), 0);
    rng r(seed);
    auto draw_sorted = [&](std::vector<int>& out) {
        out.clear();
        while ((int)out.size() < k) {
            int v = (int)r.below((uint64_t)g.n);
            if (std::find(out.begin(), out.end(), v) == out.end())
                out.push_back(v);
        }
        std::sort(out.begin(), out.end());
    };
    std::vector<int> rows, cols;
    for (long long t = 0; t < trials; ++t) {
        draw_sorted(rows);
        draw_sorted(cols);
        int pattern = 0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (g.has_edge(rows[(size_t)i], cols[(size_t)j]))
                    pattern |= 1 << (i * k + j);
        ++rep.pattern_hits[(size_t)pattern];
    }
    rep.min_pattern = 0;
    rep.min_hits = rep.pattern_hits[0];
    for (size_t b = 1; b < rep.pattern_hits.size(); ++b)
        if (rep.pattern_hits[b] < rep.min_hits) {
            rep.min_hits = rep.pattern_hits[b];
            rep.min_pattern = (int)b;
        }
    rep.min_frequency = rational::make(rep.min_hits, trials);
    return rep;
}

subset_certificate_report check_representative_subsets(const graph& g, const equipartition& q,
                                                       const std::vector<vertex_set>& reps,
                                                       rational delta, rational gamma,
                                                       long long min_size) {
    check_delta(delta, "delta");
    check_delta(gamma, "gamma");
    check_partition(g, q.parts, "equipartition");
    if (q.parts.size() < 2)
        fail(errc::parameter, "need at least two parts");
    if (reps.size() != q.parts.size())
        fail(errc::parameter, "one representative subset per part required");
    if (min_size < 1)
        fail(errc::parameter, "size bound must be positive");
    for (size_t i = 0; i < reps.size(); ++i) {
        if (reps[i].empty())
            fail(errc::parameter, "empty representative subset");
        check_vertex_set(g, reps[i], "representative subset");
        if (!std::includes(q.parts[i].begin(), q.parts[i].end(), reps[i].begin(), reps[i].end()))
            fail(errc::parameter, "representative subset leaves its part");
    }

    subset_certificate_report rep;
    rep.min_subset_size = (long long)reps.front().size();
    for (const auto& u : reps)
        rep.min_subset_size = std::min(rep.min_subset_size, (long long)u.size());
    long long qn = (long long)q.parts.size();
    rep.exceptional_allowance = delta * rational::make(qn * qn, 1);
    for (size_t i = 0; i < q.parts.size(); ++i)
        for (size_t j = i + 1; j < q.parts.size(); ++j) {
            ++rep.pair_count;
            homogeneity_verdict part_pair = homogeneity(g, q.parts[i], q.parts[j], delta);
            homogeneity_verdict rep_pair = homogeneity(g, reps[i], reps[j], gamma);
            if (!part_pair.homogeneous || rep_pair.dominant != part_pair.dominant)
                ++rep.exceptional_pairs;
            if (!rep_pair.homogeneous)
                ++rep.gamma_failures;
        }
    rep.condition1 = rational::make(rep.exceptional_pairs, 1) <= rep.exceptional_allowance;
    rep.condition2 = rep.gamma_failures == 0;
    rep.condition3 = rep.min_subset_size >= min_size;
    rep.pass = rep.condition1 && rep.condition2 && rep.condition3;
    return rep;
}

std::optional<uniform_family_result> find_uniform_family(const graph& g, int m, rational alpha,
                                                         unsigned long long budget) {
    if (m < 1)
        fail(errc::parameter, "need at least one set");
    check_delta(alpha, "alpha");
    if (g.n < m)
        fail(errc::parameter, "graph smaller than the requested family");
    if (m > 12)
        fail(errc::scale, "family size beyond the supported range");

    uniform_family_result out;
    out.beta = alpha * rational::make(1, 1ll << (2 * (m + 2)));

    // candidate vertex partitions: the refinement of a discovered homogeneous
    // partition first, then contiguous equipartitions of growing part count;
    // single-vertex parts are dropped since their pairs are homogeneous for
    // free and would let the pipeline degenerate into picking lone vertices
    std::vector<std::vector<vertex_set>> candidates;
    int finder_parts = std::min(std::max(2, g.n / 2), 64);
    if (auto found = find_homogeneous_partition(g, out.beta, finder_parts)) {
        std::vector<vertex_set> refine;
        for (const auto& r : found->partition.rows)
            for (const auto& c : found->partition.cols) {
                vertex_set common;
                std::set_intersection(r.begin(), r.end(), c.begin(), c.end(),
                                      std::back_inserter(common));
                if (common.size() >= 2)
                    refine.push_back(std::move(common));
            }
        std::sort(refine.begin(), refine.end());
        candidates.push_back(std::move(refine));
    }
    for (int q : {m, 2 * m, 4 * m, 8 * m}) {
        if (q > g.n)
            break;
        std::vector<vertex_set> chunks;
        for (int i = 0; i < q; ++i) {
            int lo = (int)((long long)g.n * i / q), hi = (int)((long long)g.n * (i + 1) / q);
            if (hi - lo < 2)
                continue;
            vertex_set chunk;
            for (int v = lo; v < hi; ++v)
                chunk.push_back(v);
            chunks.push_back(std::move(chunk));
        }
        candidates.push_back(std::move(chunks));
    }

    unsigned long long nodes = budget;
    for (const auto& parts : candidates) {
        if ((int)parts.size() < m)
            continue;
        // greedy clique in the auxiliary graph whose edges are the
        // beta-homogeneous pairs, dominant values remembered as colors
        std::vector<size_t> kept;
        std::vector<std::vector<uint8_t>> verdict_cache(parts.size());
        auto pair_verdict = [&](size_t a, size_t b) {
            return homogeneity(g, parts[a], parts[b], out.beta);
        };
        for (size_t cand = 0; cand < parts.size(); ++cand) {
            bool fits = true;
            for (size_t u : kept)
                if (!pair_verdict(u, cand).homogeneous) {
                    fits = false;
                    break;
                }
            if (fits)
                kept.push_back(cand);
        }
        if ((int)kept.size() < m)
            continue;
        std::vector<std::vector<uint8_t>> color(kept.size(),
                                                std::vector<uint8_t>(kept.size(), 0));
        for (size_t a = 0; a < kept.size(); ++a)
            for (size_t b = a + 1; b < kept.size(); ++b) {
                uint8_t c = (uint8_t)pair_verdict(kept[a], kept[b]).dominant;
                color[a][b] = color[b][a] = c;
            }
        for (uint8_t want : {uint8_t(1), uint8_t(0)}) {
            std::vector<int> pickets;
            if (!monochromatic_subset(color, m, want, nodes, pickets)) {
                if (nodes == 0)
                    return std::nullopt;  // budget gone, absence is the contract
                continue;
            }
            std::vector<vertex_set> family;
            for (int p : pickets)
                family.push_back(parts[kept[(size_t)p]]);
            // beta-homogeneity of the pairs should force extreme densities;
            // re-check exactly rather than trusting the derivation
            bool verified = true;
            for (size_t a = 0; a < family.size() && verified; ++a)
                for (size_t b = a + 1; b < family.size() && verified; ++b) {
                    rational d = density_between(g, family[a], family[b]);
                    verified = want ? rational::make(1, 1) - alpha <= d : d <= alpha;
                }
            if (!verified)
                continue;
            out.parts = std::move(family);
            out.dense = want == 1;
            return out;
        }
    }
    return std::nullopt;
}

} // namespace rlab
