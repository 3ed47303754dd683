#include "removal_lab/recognize.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "removal_lab/rng.hpp"

namespace rlab {

std::optional<bipartition> is_bipartite(const graph& g) {
    std::vector<int> color(g.n, -1);
    std::deque<int> queue;
    for (int s = 0; s < g.n; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        queue.push_back(s);
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < g.n; ++v) {
                if (!g.has_edge(u, v)) continue;
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if (color[v] == color[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    bipartition b;
    for (int v = 0; v < g.n; ++v) (color[v] == 0 ? b.left : b.right).push_back(v);
    return b;
}

std::optional<bipartition> is_cobipartite(const graph& g) {
    return is_bipartite(complement(g));
}

std::optional<split_partition> is_split(const graph& g) {
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> deg(g.n);
    for (int v = 0; v < g.n; ++v) deg[v] = g.degree(v);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] > deg[b]; });

    // splittance criterion on d_1 >= ... >= d_n with omega = max{i : d_i >= i-1}
    int omega = 0;
    for (int i = 1; i <= g.n; ++i)
        if (deg[order[i - 1]] >= i - 1) omega = i;
    long long head = 0, tail = 0;
    for (int i = 0; i < g.n; ++i) (i < omega ? head : tail) += deg[order[i]];
    if (head != (long long)omega * (omega - 1) + tail) return std::nullopt;

    split_partition sp;
    sp.clique.assign(order.begin(), order.begin() + omega);
    sp.independent.assign(order.begin() + omega, order.end());
    std::sort(sp.clique.begin(), sp.clique.end());
    std::sort(sp.independent.begin(), sp.independent.end());
    if (!is_clique(g, sp.clique) || !is_independent(g, sp.independent))
        fail(errc::consistency, "splittance witness failed re-verification");
    return sp;
}

family_conditions check_family_conditions(const graph_family& f) {
    if (f.members.empty()) fail(errc::parameter, "empty family");
    if (!f.fully_explicit())
        fail(errc::parameter, "family has non-materialized members; classify needs explicit graphs");
    family_conditions r;
    for (const auto& g : f.members) {
        member_flags m;
        m.bipartite = is_bipartite(g).has_value();
        m.cobipartite = is_cobipartite(g).has_value();
        m.split = is_split(g).has_value();
        r.has_bipartite |= m.bipartite;
        r.has_cobipartite |= m.cobipartite;
        r.has_split |= m.split;
        r.per_member.push_back(m);
    }
    r.sufficient_for_easy_testing = r.has_bipartite && r.has_cobipartite && r.has_split;
    r.necessary_for_easy_testing = r.has_bipartite && r.has_cobipartite;
    return r;
}

homogeneous_set ramsey_homogeneous_set(const graph& g, int k) {
    if (k < 1) fail(errc::parameter, "ramsey_homogeneous_set: k must be positive");
    if (k > 16) fail(errc::scale, "ramsey_homogeneous_set: k too large");
    long long need = 1;
    for (int i = 0; i < k; ++i) need *= 4;
    if (g.n < need)
        fail(errc::parameter, "ramsey_homogeneous_set: need at least 4^k vertices");

    std::vector<int> candidates(g.n);
    std::iota(candidates.begin(), candidates.end(), 0);
    std::vector<std::pair<int, int>> pivots;  // (vertex, side kept: 1 = neighborhood)
    while (!candidates.empty()) {
        int p = candidates.front();
        std::vector<int> nb, nn;
        for (size_t i = 1; i < candidates.size(); ++i) {
            int v = candidates[i];
            (g.has_edge(p, v) ? nb : nn).push_back(v);
        }
        int side = nb.size() >= nn.size() ? 1 : 0;
        pivots.emplace_back(p, side);
        candidates = side ? std::move(nb) : std::move(nn);
    }

    int ones = 0;
    for (auto [p, s] : pivots) ones += s;
    int majority = 2 * ones >= (int)pivots.size() ? 1 : 0;
    homogeneous_set hs;
    hs.clique = majority == 1;
    for (auto [p, s] : pivots)
        if (s == majority) hs.vertices.push_back(p);
    std::sort(hs.vertices.begin(), hs.vertices.end());

    if ((int)hs.vertices.size() < k)
        fail(errc::consistency, "pivot recursion produced fewer than k vertices");
    bool ok = hs.clique ? is_clique(g, hs.vertices) : is_independent(g, hs.vertices);
    if (!ok) fail(errc::consistency, "pivot recursion produced a non-homogeneous set");
    return hs;
}

namespace {

bool shattered(const graph& g, const std::vector<int>& rows) {
    int d = (int)rows.size();
    if (d > 20) return false;
    std::vector<uint8_t> seen(size_t(1) << d, 0);
    int patterns = 0;
    for (int u = 0; u < g.n; ++u) {
        unsigned p = 0;
        for (int i = 0; i < d; ++i) p |= unsigned(g.has_edge(rows[i], u)) << i;
        if (!seen[p]) {
            seen[p] = 1;
            if (++patterns == (1 << d)) return true;
        }
    }
    return false;
}

} // namespace

int vc_dimension(const graph& g, int cap) {
    if (g.n > cap) fail(errc::scale, "vc_dimension: order above exhaustive cap");
    // shattering is hereditary, so grow shattered sets level by level
    std::vector<std::vector<int>> level;
    for (int v = 0; v < g.n; ++v)
        if (shattered(g, {v})) level.push_back({v});
    int best = level.empty() ? 0 : 1;
    while (!level.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& rows : level) {
            for (int v = rows.back() + 1; v < g.n; ++v) {
                auto grown = rows;
                grown.push_back(v);
                if (shattered(g, grown)) next.push_back(std::move(grown));
            }
        }
        if (!next.empty()) best = (int)next.front().size();
        level = std::move(next);
    }
    return best;
}

namespace {

graph completion_graph(const bipartite_pattern& h, uint64_t left_mask, uint64_t right_mask) {
    graph g(h.s + h.t);
    for (int i = 0; i < h.s; ++i)
        for (int j = 0; j < h.t; ++j)
            if (h.at(i, j)) g.add_edge(i, h.s + j);
    int idx = 0;
    for (int a = 0; a < h.s; ++a)
        for (int b = a + 1; b < h.s; ++b, ++idx)
            if ((left_mask >> idx) & 1) g.add_edge(a, b);
    idx = 0;
    for (int a = 0; a < h.t; ++a)
        for (int b = a + 1; b < h.t; ++b, ++idx)
            if ((right_mask >> idx) & 1) g.add_edge(h.s + a, h.s + b);
    return g;
}

bool contains_induced_member(const graph& g, const graph_family& f) {
    for (const auto& m : f.members)
        if (m.n <= g.n && find_induced_copy(g, m).has_value()) return true;
    return false;
}

} // namespace

bool verify_bipartite_obstruction(const bipartite_pattern& h, const graph_family& f,
                                  unsigned long long completion_cap) {
    if (f.members.empty()) fail(errc::parameter, "empty family");
    int lp = h.s * (h.s - 1) / 2, rp = h.t * (h.t - 1) / 2;
    if (lp + rp >= 63 || (1ull << (lp + rp)) > completion_cap)
        fail(errc::scale, "completion enumeration above cap");
    for (uint64_t lm = 0; lm < (1ull << lp); ++lm)
        for (uint64_t rm = 0; rm < (1ull << rp); ++rm)
            if (!contains_induced_member(completion_graph(h, lm, rm), f)) return false;
    return true;
}

std::optional<bipartite_pattern> search_bipartite_obstruction(const graph_family& f, int side,
                                                              int attempts, uint64_t seed,
                                                              unsigned long long completion_cap) {
    auto cond = check_family_conditions(f);
    if (!cond.sufficient_for_easy_testing)
        fail(errc::condition,
             "obstruction search applies to families with bipartite, co-bipartite and split members");
    if (side < 1) fail(errc::parameter, "side must be positive");
    for (int a = 0; a < attempts; ++a) {
        rng r(derive_seed(seed, (uint64_t)a));
        bipartite_pattern h;
        h.s = h.t = side;
        h.cross.resize(size_t(side) * side);
        for (auto& bit : h.cross) bit = r.coin();
        if (verify_bipartite_obstruction(h, f, completion_cap)) return h;
    }
    return std::nullopt;
}

std::optional<std::vector<uint8_t>> blowup_quality_witness(const graph_family& f,
                                                           const graph& candidate, int s_max) {
    if (s_max < 1) fail(errc::parameter, "s_max must be positive");
    if (candidate.n > 16) fail(errc::scale, "candidate too large for g-map enumeration");
    if (find_family_witness(candidate, f).has_value())
        fail(errc::condition, "candidate already contains a family member");
    if ((long long)candidate.n * s_max > 4000)
        fail(errc::scale, "blowup verification budget exceeded");

    for (uint64_t mask = 0; mask < (1ull << candidate.n); ++mask) {
        blowup_spec spec;
        spec.sizes.assign(candidate.n, 0);
        spec.clique_part.assign(candidate.n, 0);
        for (int v = 0; v < candidate.n; ++v) spec.clique_part[v] = (mask >> v) & 1;
        bool ok = true;
        for (int s = 1; s <= s_max && ok; ++s) {
            std::fill(spec.sizes.begin(), spec.sizes.end(), s);
            if (find_family_witness(blowup(candidate, spec), f).has_value()) ok = false;
        }
        if (ok) {
            std::vector<uint8_t> gmap(spec.clique_part.begin(), spec.clique_part.end());
            return gmap;
        }
    }
    return std::nullopt;
}

} // namespace rlab
