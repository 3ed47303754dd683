#include "removal_lab/count.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

namespace rlab {

unsigned long long automorphism_count(const graph& h) {
    if (h.n > 10) fail(errc::scale, "automorphism_count: pattern too large");
    std::vector<int> perm(h.n);
    std::iota(perm.begin(), perm.end(), 0);
    unsigned long long count = 0;
    do {
        bool ok = true;
        for (int u = 0; u < h.n && ok; ++u)
            for (int v = u + 1; v < h.n && ok; ++v)
                if (h.has_edge(u, v) != h.has_edge(perm[u], perm[v])) ok = false;
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

bool isomorphic(const graph& a, const graph& b) {
    if (a.n != b.n || a.edge_count() != b.edge_count()) return false;
    if (a.n > 10) fail(errc::scale, "isomorphic: order too large");
    std::vector<int> da(a.n), db(b.n);
    for (int v = 0; v < a.n; ++v) da[v] = a.degree(v);
    for (int v = 0; v < b.n; ++v) db[v] = b.degree(v);
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    std::vector<int> perm(a.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int v = 0; v < a.n && ok; ++v)
            if (da[v] != db[perm[v]]) ok = false;
        for (int u = 0; u < a.n && ok; ++u)
            for (int v = u + 1; v < a.n && ok; ++v)
                if (a.has_edge(u, v) != b.has_edge(perm[u], perm[v])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

namespace {

// Shared backtracking over injections in pattern-index order.  visit returns
// false to stop the enumeration early.
struct embed_search {
    const graph& g;
    const graph& h;
    copy_mode mode;
    unsigned long long budget;
    unsigned long long nodes = 0;
    std::vector<int> image;
    std::vector<uint8_t> used;
    const std::function<bool(const std::vector<int>&)>& visit;

    embed_search(const graph& g_, const graph& h_, copy_mode m, unsigned long long b,
                 const std::function<bool(const std::vector<int>&)>& v)
        : g(g_), h(h_), mode(m), budget(b), image(h_.n, -1), used(g_.n, 0), visit(v) {}

    bool consistent(int i, int cand) const {
        for (int j = 0; j < i; ++j) {
            bool hp = h.has_edge(i, j), gp = g.has_edge(cand, image[j]);
            if (mode == copy_mode::induced ? hp != gp : (hp && !gp)) return false;
        }
        return true;
    }

    // returns false when the visitor asked to stop
    bool run(int i) {
        if (i == h.n) return visit(image);
        for (int cand = 0; cand < g.n; ++cand) {
            if (used[cand]) continue;
            if (++nodes > budget) fail(errc::scale, "embedding search exceeded node budget");
            if (!consistent(i, cand)) continue;
            image[i] = cand;
            used[cand] = 1;
            bool keep_going = run(i + 1);
            used[cand] = 0;
            image[i] = -1;
            if (!keep_going) return false;
        }
        return true;
    }
};

void check_pattern(const graph& pattern) {
    if (pattern.n < 1) fail(errc::parameter, "empty pattern");
    if (pattern.n > 8) fail(errc::scale, "pattern order above the supported cap of 8");
}

} // namespace

count_result count_copies(const graph& g, const graph& pattern, copy_mode mode,
                          unsigned long long node_budget) {
    check_pattern(pattern);
    count_result r;
    r.aut = automorphism_count(pattern);
    std::function<bool(const std::vector<int>&)> tally = [&](const std::vector<int>&) {
        ++r.labeled;
        return true;
    };
    embed_search s(g, pattern, mode, node_budget, tally);
    s.run(0);
    if (r.labeled % r.aut != 0) fail(errc::consistency, "labeled count not divisible by |Aut|");
    r.copies = bigint(r.labeled) / r.aut;
    return r;
}

std::optional<copy_record> find_copy(const graph& g, const graph& pattern, copy_mode mode,
                                     unsigned long long node_budget) {
    check_pattern(pattern);
    std::optional<copy_record> found;
    std::function<bool(const std::vector<int>&)> grab = [&](const std::vector<int>& img) {
        found = copy_record{img};
        return false;
    };
    embed_search s(g, pattern, mode, node_budget, grab);
    s.run(0);
    return found;
}

namespace {

struct bipartite_search {
    const graph& g;
    const bipartite_pattern& p;
    unsigned long long budget;
    unsigned long long nodes = 0;
    std::vector<int> image;  // s left images then t right images
    std::vector<uint8_t> used;
    const std::function<bool(const std::vector<int>&)>& visit;

    bipartite_search(const graph& g_, const bipartite_pattern& p_, unsigned long long b,
                     const std::function<bool(const std::vector<int>&)>& v)
        : g(g_), p(p_), budget(b), image(size_t(p_.s) + p_.t, -1), used(g_.n, 0), visit(v) {}

    bool consistent(int pos, int cand) const {
        if (pos < p.s) return true;  // left side unconstrained against left
        int j = pos - p.s;
        for (int i = 0; i < p.s; ++i)
            if (p.at(i, j) != g.has_edge(image[i], cand)) return false;
        return true;
    }

    bool run(int pos) {
        if (pos == (int)image.size()) return visit(image);
        for (int cand = 0; cand < g.n; ++cand) {
            if (used[cand]) continue;
            if (++nodes > budget) fail(errc::scale, "bipartite embedding search exceeded node budget");
            if (!consistent(pos, cand)) continue;
            image[pos] = cand;
            used[cand] = 1;
            bool keep_going = run(pos + 1);
            used[cand] = 0;
            image[pos] = -1;
            if (!keep_going) return false;
        }
        return true;
    }
};

void check_bipartite_pattern(const bipartite_pattern& p) {
    if (p.s < 1 || p.t < 1) fail(errc::parameter, "bipartite pattern needs both sides nonempty");
    if (p.s + p.t > 8) fail(errc::scale, "bipartite pattern order above the supported cap of 8");
    if ((int)p.cross.size() != p.s * p.t) fail(errc::parameter, "bipartite pattern cross size mismatch");
}

} // namespace

bigint count_induced_bipartite_copies(const graph& g, const bipartite_pattern& p,
                                      unsigned long long node_budget) {
    check_bipartite_pattern(p);
    unsigned long long labeled = 0;
    std::function<bool(const std::vector<int>&)> tally = [&](const std::vector<int>&) {
        ++labeled;
        return true;
    };
    bipartite_search s(g, p, node_budget, tally);
    s.run(0);
    return bigint(labeled);
}

std::optional<copy_record> find_induced_bipartite_copy(const graph& g, const bipartite_pattern& p,
                                                       unsigned long long node_budget) {
    check_bipartite_pattern(p);
    std::optional<copy_record> found;
    std::function<bool(const std::vector<int>&)> grab = [&](const std::vector<int>& img) {
        found = copy_record{img};
        return false;
    };
    bipartite_search s(g, p, node_budget, grab);
    s.run(0);
    return found;
}

namespace {

int shared_vertices(const copy_record& a, const copy_record& b) {
    int shared = 0;
    for (int u : a.vertices)
        for (int v : b.vertices)
            if (u == v) ++shared;
    return shared;
}

} // namespace

packing greedy_pair_disjoint_packing(const graph& g, const graph& pattern, copy_mode mode,
                                     unsigned long long node_budget) {
    check_pattern(pattern);
    packing pk;
    pk.pattern = pattern;
    pk.mode = mode;
    std::function<bool(const std::vector<int>&)> consider = [&](const std::vector<int>& img) {
        copy_record rec{img};
        for (const auto& kept : pk.copies)
            if (shared_vertices(rec, kept) >= 2) return true;
        pk.copies.push_back(std::move(rec));
        return true;
    };
    embed_search s(g, pattern, mode, node_budget, consider);
    s.run(0);
    return pk;
}

void verify_packing(const graph& g, const packing& p) {
    // no enumeration happens here, so listed copies of any arity are checkable
    if (p.pattern.n < 1)
        fail(errc::parameter, "empty pattern");
    for (size_t c = 0; c < p.copies.size(); ++c) {
        const auto& img = p.copies[c].vertices;
        if ((int)img.size() != p.pattern.n)
            fail(errc::consistency, "packing copy " + std::to_string(c) + " has wrong arity");
        std::vector<int> sorted = img;
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] < 0 || sorted[i] >= g.n)
                fail(errc::consistency, "packing copy " + std::to_string(c) + " out of range");
            if (i && sorted[i] == sorted[i - 1])
                fail(errc::consistency, "packing copy " + std::to_string(c) + " repeats a vertex");
        }
        for (int u = 0; u < p.pattern.n; ++u)
            for (int v = u + 1; v < p.pattern.n; ++v) {
                bool hp = p.pattern.has_edge(u, v), gp = g.has_edge(img[u], img[v]);
                bool bad = p.mode == copy_mode::induced ? hp != gp : (hp && !gp);
                if (bad)
                    fail(errc::consistency,
                         "packing copy " + std::to_string(c) + " is not a valid copy at pair (" +
                             std::to_string(u) + "," + std::to_string(v) + ")");
            }
    }
    for (size_t a = 0; a < p.copies.size(); ++a)
        for (size_t b = a + 1; b < p.copies.size(); ++b)
            if (shared_vertices(p.copies[a], p.copies[b]) >= 2)
                fail(errc::consistency, "packing copies " + std::to_string(a) + " and " +
                                            std::to_string(b) + " share two vertices");
}

std::vector<std::vector<int>> tuple_collection(int m, int h, unsigned long long enum_budget) {
    if (m < 1 || h < 2) fail(errc::parameter, "tuple_collection needs m >= 1, h >= 2");
    if (h > 16 || m > (1 << 20)) fail(errc::scale, "tuple_collection parameters too large");
    double pool = 1;
    for (int i = 0; i < h; ++i) pool *= m;
    if (pool > (double)enum_budget) fail(errc::scale, "tuple_collection pool exceeds budget");

    // A conflict is two coordinate agreements with a kept tuple, so we index
    // kept tuples by every (pos,val,pos',val') pair and test candidates with
    // C(h,2) lookups instead of scanning the whole collection.
    std::vector<std::vector<int>> kept;
    std::unordered_set<uint64_t> pair_sig;
    auto sig = [&](int i, int vi, int j, int vj) {
        return (uint64_t(i) << 60) | (uint64_t(j) << 56) | (uint64_t(vi) << 28) | uint64_t(vj);
    };
    std::vector<int> t(h, 0);
    while (true) {
        bool clash = false;
        for (int i = 0; i < h && !clash; ++i)
            for (int j = i + 1; j < h && !clash; ++j)
                if (pair_sig.count(sig(i, t[i], j, t[j]))) clash = true;
        if (!clash) {
            for (int i = 0; i < h; ++i)
                for (int j = i + 1; j < h; ++j) pair_sig.insert(sig(i, t[i], j, t[j]));
            kept.push_back(t);
        }
        int pos = h - 1;
        while (pos >= 0 && t[pos] == m - 1) t[pos--] = 0;
        if (pos < 0) break;
        ++t[pos];
    }
    unsigned long long need = (unsigned long long)(((long long)m * m + (long long)h * h - 1) / ((long long)h * h));
    if (need == 0) need = 1;
    if (kept.size() < need) fail(errc::consistency, "tuple collection below the m^2/h^2 floor");
    return kept;
}

std::vector<std::vector<int>> ap_tuple_collection(int m, int h) {
    if (m < 1 || h < 2) fail(errc::parameter, "ap_tuple_collection needs m >= 1, h >= 2");
    if (m > (1 << 20)) fail(errc::scale, "ap_tuple_collection range too large");
    // Progressions (x, x+s, .., x+(h-1)s) without wraparound: two shared
    // coordinates pin both x and s, so any two tuples agree at most once.
    std::vector<std::vector<int>> kept;
    for (int s = 0; (long long)(h - 1) * s <= m - 1; ++s)
        for (int x = 0; x + (long long)(h - 1) * s <= m - 1; ++x) {
            std::vector<int> t(h);
            for (int i = 0; i < h; ++i) t[i] = x + i * s;
            kept.push_back(std::move(t));
        }
    unsigned long long need = (unsigned long long)(((long long)m * m + (long long)h * h - 1) / ((long long)h * h));
    if (need == 0) need = 1;
    if (kept.size() < need) fail(errc::consistency, "progression collection below the m^2/h^2 floor");
    return kept;
}

unsigned long long enumerate_layered_cycles(
    const graph& g, const std::vector<vertex_set>& layers, const std::vector<int>& idx,
    unsigned long long node_budget,
    const std::function<void(const std::vector<int>&)>& visit) {
    int t = (int)idx.size();
    if (t < 3) fail(errc::parameter, "layered cycle needs at least 3 layers");
    for (int i = 0; i < t; ++i) {
        if (idx[i] < 1 || idx[i] > (int)layers.size()) fail(errc::parameter, "layer index out of range");
        if (i && idx[i] <= idx[i - 1]) fail(errc::parameter, "layer indices must increase");
    }
    unsigned long long nodes = 0, found = 0;
    std::vector<int> cyc(t, -1);
    auto dfs = [&](auto&& self, int at) -> void {
        if (at == t) {
            if (g.has_edge(cyc[t - 1], cyc[0])) {
                ++found;
                if (visit) visit(cyc);
            }
            return;
        }
        for (int v : layers[idx[at] - 1]) {
            if (++nodes > node_budget) fail(errc::scale, "layered cycle enumeration exceeded budget");
            if (at > 0 && !g.has_edge(cyc[at - 1], v)) continue;
            cyc[at] = v;
            self(self, at + 1);
            cyc[at] = -1;
        }
    };
    dfs(dfs, 0);
    return found;
}

unsigned long long count_layered_cycles(const graph& g, const std::vector<vertex_set>& layers,
                                        const std::vector<int>& idx,
                                        unsigned long long node_budget) {
    return enumerate_layered_cycles(g, layers, idx, node_budget, nullptr);
}

} // namespace rlab
