#include "removal_lab/construct.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "removal_lab/errors.hpp"
#include "removal_lab/recognize.hpp"
#include "removal_lab/rng.hpp"

namespace rlab {

namespace {

constexpr long long graph_order_guard = 32768;

// all coefficient tuples (a1..al) with l in [2,k], ai >= 1, sum <= k
std::vector<std::vector<long long>> coefficient_tuples(long long k) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur;
    auto rec = [&](auto&& self, long long remaining) -> void {
        if (cur.size() >= 2)
            out.push_back(cur);
        for (long long a = 1; a <= remaining; ++a) {
            cur.push_back(a);
            self(self, remaining - a);
            cur.pop_back();
        }
    };
    rec(rec, k);
    return out;
}

// solves for s(l+1) instead of enumerating it: one division per value tuple
bool solves(const std::vector<long long>& coeffs, const std::vector<long long>& values,
            const std::unordered_set<long long>& in_s, long long& closing) {
    long long total = 0, weight = 0;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        total += coeffs[i] * values[i];
        weight += coeffs[i];
    }
    if (total % weight != 0)
        return false;
    closing = total / weight;
    if (!in_s.count(closing))
        return false;
    for (long long v : values)
        if (v != closing)
            return true;  // nontrivial: not all entries equal
    return false;
}

long long smallest_base(long long m, long long d) {
    long long b = std::max<long long>(2, (long long)std::ceil(std::pow((double)m, 1.0 / (double)d)));
    auto power_reaches = [&](long long base) {
        long long p = 1;
        for (long long i = 0; i < d; ++i) {
            if (p > m / base + 1)
                return true;
            p *= base;
        }
        return p >= m;
    };
    while (!power_reaches(b))
        ++b;
    while (b > 2 && power_reaches(b - 1))
        --b;
    return b;
}

std::vector<int> shortest_odd_cycle(const graph& k) {
    for (int t = 3; t <= k.n; t += 2) {
        std::vector<int> path;
        std::vector<char> used(k.n, 0);
        auto dfs = [&](auto&& self) -> bool {
            if ((int)path.size() == t)
                return k.has_edge(path.back(), path.front());
            for (int v = 0; v < k.n; ++v) {
                if (used[v] || (!path.empty() && !k.has_edge(path.back(), v)))
                    continue;
                used[v] = 1;
                path.push_back(v);
                if (self(self))
                    return true;
                path.pop_back();
                used[v] = 0;
            }
            return false;
        };
        if (dfs(dfs))
            return path;  // ascending search returns the least vertex sequence
    }
    fail(errc::consistency, "expected an odd cycle in a non-bipartite graph");
}

std::vector<std::vector<int>> transversal_tuples(int block, int h,
                                                 unsigned long long budget) {
    double pool = 1;
    for (int i = 0; i < h && pool <= 2e7; ++i)
        pool *= block;
    if (h <= 16 && pool <= 2e7 && pool <= (double)budget)
        return tuple_collection(block, h, budget);
    return ap_tuple_collection(block, h);
}

rational pack_density(size_t copies, long long n) {
    return rational::make((long long)copies, (__int128)n * n);
}

} // namespace

convex_free_verdict verify_convex_free(const std::vector<long long>& s, long long k,
                                       unsigned long long budget, uint64_t seed) {
    convex_free_verdict out;
    if (s.size() <= 1 || k < 2) {
        out.exhaustive = true;
        return out;
    }
    auto coeffs = coefficient_tuples(k);
    std::unordered_set<long long> in_s(s.begin(), s.end());

    long double work = 0;
    for (const auto& c : coeffs)
        work += std::pow((long double)s.size(), (long double)c.size());
    out.exhaustive = work <= (long double)budget;

    auto record = [&](const std::vector<long long>& c, const std::vector<long long>& v,
                      long long closing) {
        if (out.violations.size() >= 8)
            return;
        convex_free_violation viol{c, v};
        viol.values.push_back(closing);
        out.violations.push_back(std::move(viol));
    };

    if (out.exhaustive) {
        for (const auto& c : coeffs) {
            size_t l = c.size();
            std::vector<size_t> idx(l, 0);
            std::vector<long long> values(l);
            while (true) {
                for (size_t i = 0; i < l; ++i)
                    values[i] = s[idx[i]];
                ++out.checked;
                long long closing = 0;
                if (solves(c, values, in_s, closing))
                    record(c, values, closing);
                size_t pos = l;
                while (pos > 0 && idx[pos - 1] == s.size() - 1)
                    idx[--pos] = 0;
                if (pos == 0)
                    break;
                ++idx[pos - 1];
            }
        }
    } else {
        unsigned long long samples = std::min<unsigned long long>(budget, 1000000);
        rng r(seed);
        std::vector<long long> values;
        for (unsigned long long round = 0; round < samples; ++round) {
            const auto& c = coeffs[r.below(coeffs.size())];
            values.resize(c.size());
            for (auto& v : values)
                v = s[r.below(s.size())];
            ++out.checked;
            long long closing = 0;
            if (solves(c, values, in_s, closing))
                record(c, values, closing);
        }
    }
    return out;
}

behrend_set make_behrend_set(long long m, long long k, unsigned long long verify_budget) {
    if (m < 2 || k < 2)
        fail(errc::parameter, "digit-shell set needs m >= 2, k >= 2");

    behrend_set out;
    out.m = m;
    out.k = k;
    out.digits = std::max<long long>(1, llround(std::sqrt(std::log2((double)m))));
    out.base = smallest_base(m, out.digits);
    out.digit_cap = (out.base - 1) / k + 1;
    if (out.digit_cap < 2)
        fail(errc::parameter, "digit cap below 2 for this coefficient budget; increase m");

    long double combos = std::pow((long double)out.digit_cap, (long double)out.digits);
    if (combos > 1e8)
        fail(errc::scale, "digit enumeration too large");

    std::unordered_map<long long, std::vector<long long>> shells;
    std::vector<long long> digit(out.digits, 0);
    while (true) {
        long long value = 0, place = 1, norm = 0;
        for (long long i = 0; i < out.digits; ++i) {
            value += digit[i] * place;
            place *= out.base;
            norm += digit[i] * digit[i];
        }
        if (value >= 1 && value <= m)
            shells[norm].push_back(value);
        long long pos = out.digits;
        while (pos > 0 && digit[pos - 1] == out.digit_cap - 1)
            digit[--pos] = 0;
        if (pos == 0)
            break;
        ++digit[pos - 1];
    }
    if (shells.empty())
        fail(errc::degenerate, "no admissible values in range");

    long long best_norm = -1;
    size_t best_size = 0;
    for (const auto& [norm, values] : shells)
        if (values.size() > best_size || (values.size() == best_size && norm < best_norm)) {
            best_norm = norm;
            best_size = values.size();
        }
    out.shell = best_norm;
    out.members = shells[best_norm];
    std::sort(out.members.begin(), out.members.end());

    auto verdict = verify_convex_free(out.members, k, verify_budget,
                                      derive_seed(0xbe42, (uint64_t)(m * 31 + k)));
    if (!verdict.violations.empty())
        fail(errc::consistency, "digit-shell set admits a nontrivial solution");
    out.verified_exhaustive = verdict.exhaustive;
    return out;
}

layered_clique_graph layered_cliques(int h, rational delta, layered_options opts) {
    if (h < 3)
        fail(errc::parameter, "layered construction needs h >= 3");
    if (!(rational::make(0, 1) < delta) || !(delta < rational::make(1, 1)))
        fail(errc::parameter, "density must lie strictly between 0 and 1");
    if (opts.m_cap < 2)
        fail(errc::parameter, "scale cap below 2");

    long long pairs = (long long)h * (h + 1) / 2;
    auto try_scale = [&](long long m) -> std::optional<behrend_set> {
        behrend_set s;
        try {
            s = make_behrend_set(m, h - 1, opts.budget);
        } catch (const error& e) {
            if (e.kind == errc::parameter || e.kind == errc::degenerate)
                return std::nullopt;
            throw;
        }
        // feasibility is exactly the clique-count inequality m|S| >= delta (pairs m)^2
        rational have = rational::make((long long)s.members.size(), 1);
        rational need = delta * rational::make(pairs * pairs * m, 1);
        if (have < need)
            return std::nullopt;
        return s;
    };

    long long chosen = 0;
    std::optional<behrend_set> chosen_set;
    if (opts.m_hint) {
        if (*opts.m_hint < 2)
            fail(errc::parameter, "scale hint below 2");
        chosen_set = try_scale(*opts.m_hint);
        if (!chosen_set)
            fail(errc::condition, "hinted scale infeasible for requested density");
        chosen = *opts.m_hint;
    } else {
        // geometric sweep records the last feasible probe; a binary pass then
        // pushes toward the largest feasible scale inside the final bracket
        std::vector<long long> probes;
        for (long long m = 2; m <= opts.m_cap; m *= 2)
            probes.push_back(m);
        if (probes.empty() || probes.back() != opts.m_cap)
            probes.push_back(opts.m_cap);
        long long lo = 0, hi = 0;
        for (size_t i = 0; i < probes.size(); ++i)
            if (auto s = try_scale(probes[i])) {
                lo = probes[i];
                chosen_set = s;
                hi = i + 1 < probes.size() ? probes[i + 1] : 0;
            }
        if (lo == 0)
            fail(errc::condition, "no feasible scale up to the cap for requested density");
        while (hi != 0 && hi - lo > 1) {
            long long mid = lo + (hi - lo) / 2;
            if (auto s = try_scale(mid)) {
                lo = mid;
                chosen_set = s;
            } else {
                hi = mid;
            }
        }
        chosen = lo;
    }

    layered_clique_graph out;
    out.h = h;
    out.m = chosen;
    out.delta = delta;
    out.s = *chosen_set;

    long long order = pairs * chosen;
    if (order > graph_order_guard)
        fail(errc::scale, "layered graph order exceeds guard");
    out.g = graph((int)order);
    out.layer_of.assign((size_t)order, -1);
    std::vector<long long> offset(h + 1, 0);
    for (int j = 0; j < h; ++j)
        offset[j + 1] = offset[j] + (long long)(j + 1) * chosen;
    out.layers.resize(h);
    for (int j = 0; j < h; ++j) {
        out.layers[j].resize((size_t)((j + 1) * chosen));
        for (long long x = 0; x < (j + 1) * chosen; ++x) {
            out.layers[j][(size_t)x] = (int)(offset[j] + x);
            out.layer_of[(size_t)(offset[j] + x)] = j;
        }
    }

    std::unordered_map<uint64_t, int> edge_owner;
    for (long long x = 1; x <= chosen; ++x)
        for (long long s : out.s.members) {
            vertex_set clique(h);
            for (int j = 0; j < h; ++j)
                clique[j] = (int)(offset[j] + (x + (long long)j * s) - 1);
            int id = (int)out.cliques.size();
            for (int i = 0; i < h; ++i)
                for (int j = i + 1; j < h; ++j) {
                    uint64_t key = (uint64_t)clique[i] * (uint64_t)order + (uint64_t)clique[j];
                    auto [it, fresh] = edge_owner.emplace(key, id);
                    if (!fresh)
                        fail(errc::consistency, "registry cliques share an edge");
                    out.g.add_edge(clique[i], clique[j]);
                }
            out.cliques.push_back(std::move(clique));
        }

    for (auto [u, v] : out.g.edges())
        if (out.layer_of[(size_t)u] == out.layer_of[(size_t)v])
            fail(errc::consistency, "layer holds an internal edge");
    if ((long long)out.cliques.size() != chosen * (long long)out.s.members.size())
        fail(errc::consistency, "registry size mismatch");
    rational density_have = rational::make((long long)out.cliques.size(), 1);
    rational density_need = delta * rational::make(order * order, 1);
    if (density_have < density_need)
        fail(errc::consistency, "registry density below target");

    if (opts.check_cycles && order <= 2500 && h <= 8) {
        std::vector<std::vector<int>> cliques_at((size_t)order);
        for (size_t c = 0; c < out.cliques.size(); ++c)
            for (int v : out.cliques[c])
                cliques_at[(size_t)v].push_back((int)c);
        bool contained = true;
        unsigned long long total = 0;
        bool measured = true;
        try {
            for (uint32_t mask = 0; mask < (1u << h) && measured; ++mask) {
                if (__builtin_popcount(mask) < 3)
                    continue;
                std::vector<int> idx;
                for (int j = 0; j < h; ++j)
                    if (mask & (1u << j))
                        idx.push_back(j + 1);
                total += enumerate_layered_cycles(
                    out.g, out.layers, idx, opts.budget, [&](const std::vector<int>& cyc) {
                        for (int c : cliques_at[(size_t)cyc[0]]) {
                            const vertex_set& cl = out.cliques[(size_t)c];
                            bool inside = true;
                            for (int v : cyc)
                                if (!std::binary_search(cl.begin(), cl.end(), v)) {
                                    inside = false;
                                    break;
                                }
                            if (inside)
                                return;
                        }
                        contained = false;
                    });
            }
        } catch (const error& e) {
            if (e.kind != errc::scale)
                throw;
            measured = false;
        }
        if (measured) {
            out.cycle_check_ran = true;
            out.layered_cycles = total;
            out.strong_cycle_property = contained;
            if (total > (unsigned long long)(order * order))
                fail(errc::consistency, "layered cycle count exceeds the quadratic bound");
        }
    }
    return out;
}

graph co_matching_apex(int pairs) {
    if (pairs < 1)
        fail(errc::parameter, "need at least one matching pair");
    graph g = complete_graph(2 * pairs + 1);
    for (int i = 0; i < pairs; ++i)
        g.remove_edge(2 * i, 2 * i + 1);
    return g;
}

bool check_cycle8_layout(const graph& g, const std::vector<vertex_set>& parts) {
    if (parts.size() != 8)
        fail(errc::parameter, "layout needs exactly 8 parts");
    std::vector<char> seen((size_t)g.n, 0);
    size_t covered = 0;
    for (const auto& p : parts) {
        check_vertex_set(g, p, "layout part");
        for (int v : p) {
            if (seen[(size_t)v])
                fail(errc::parameter, "parts overlap");
            seen[(size_t)v] = 1;
        }
        covered += p.size();
    }
    if (covered != (size_t)g.n)
        fail(errc::parameter, "parts do not cover the graph");

    for (int i = 0; i < 8; ++i) {
        bool odd_part = i % 2 == 0;  // parts[0] plays X1
        if (odd_part && !is_clique(g, parts[(size_t)i]))
            return false;
        if (!odd_part && !is_independent(g, parts[(size_t)i]))
            return false;
    }
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) {
            bool consecutive = j - i == 1 || (i == 0 && j == 7);
            if (consecutive)
                continue;
            if (edges_between(g, parts[(size_t)i], parts[(size_t)j]) != 0)
                return false;
        }
    return true;
}

hard_instance cycle8_overlay_instance(long long n, rational epsilon,
                                      std::optional<long long> m_hint, layered_options opts) {
    if (!(rational::make(0, 1) < epsilon))
        fail(errc::parameter, "farness target must be positive");
    rational delta = rational::make(64, 1) * epsilon;
    if (!(delta < rational::make(1, 1)))
        fail(errc::parameter, "farness target too large for the layered construction");
    opts.m_hint = m_hint ? m_hint : opts.m_hint;
    layered_clique_graph base = layered_cliques(8, delta, opts);

    long long r = base.g.n;
    long long block = n / r;
    if (block < 1)
        fail(errc::degenerate, "order below one vertex per base vertex");
    long long n_eff = r * block;
    if (n_eff > 20000)
        fail(errc::scale, "instance order exceeds guard");

    hard_instance out;
    out.kind = "thm4";
    out.n_requested = n;
    out.n_effective = n_eff;
    out.epsilon = epsilon;
    out.h = 8;
    out.m = base.m;
    out.r = r;
    out.clique_count = (long long)base.cliques.size();

    out.g = graph((int)n_eff);
    // cross edges: plain 8-cycle blowup across each registry clique
    for (const vertex_set& cl : base.cliques)
        for (int j = 0; j < 8; ++j) {
            long long a = cl[(size_t)j], b = cl[(size_t)((j + 1) % 8)];
            for (long long x = 0; x < block; ++x)
                for (long long y = 0; y < block; ++y)
                    out.g.add_edge((int)(a * block + x), (int)(b * block + y));
        }
    // odd layers become single cliques over all their blocks
    out.parts.resize(8);
    for (int j = 0; j < 8; ++j) {
        vertex_set& part = out.parts[(size_t)j];
        for (int v : base.layers[(size_t)j])
            for (long long x = 0; x < block; ++x)
                part.push_back((int)((long long)v * block + x));
        std::sort(part.begin(), part.end());
        if (j % 2 == 0)
            for (size_t a = 0; a < part.size(); ++a)
                for (size_t b = a + 1; b < part.size(); ++b)
                    out.g.add_edge(part[a], part[b]);
    }

    out.structure_verified = check_cycle8_layout(out.g, out.parts);
    if (!out.structure_verified)
        fail(errc::consistency, "overlay violates its own layout");

    out.pattern = cycle_graph(8);
    out.pack.pattern = out.pattern;
    out.pack.mode = copy_mode::induced;
    auto tuples = transversal_tuples((int)block, 8, opts.budget);
    for (const vertex_set& cl : base.cliques)
        for (const auto& t : tuples) {
            copy_record copy;
            copy.vertices.resize(8);
            for (int j = 0; j < 8; ++j)
                copy.vertices[(size_t)j] = (int)((long long)cl[(size_t)j] * block + t[(size_t)j]);
            out.pack.copies.push_back(std::move(copy));
        }
    verify_packing(out.g, out.pack);

    out.epsilon_achieved = pack_density(out.pack.copies.size(), n_eff);
    if (out.epsilon_achieved < epsilon)
        fail(errc::consistency, "packing below the requested farness");

    out.forbidden.members = {cycle_graph(8), co_matching_apex(3)};
    return out;
}

hard_instance core_pattern_instance(const graph& h_pattern, rational epsilon, long long n,
                                    std::optional<long long> m_hint, layered_options opts) {
    if (h_pattern.n < 3)
        fail(errc::parameter, "pattern too small");
    if (is_bipartite(h_pattern))
        fail(errc::condition, "pattern must be non-bipartite");
    if (!(rational::make(0, 1) < epsilon))
        fail(errc::parameter, "farness target must be positive");
    int h = h_pattern.n;
    rational delta = rational::make((long long)h * h, 1) * epsilon;
    if (!(delta < rational::make(1, 1)))
        fail(errc::parameter, "farness target too large for the layered construction");

    core_result cr = core_of(h_pattern);
    const graph& k_raw = cr.core;
    std::vector<int> cycle = shortest_odd_cycle(k_raw);

    // relabel the core so the odd cycle comes first, then order the pattern so
    // each core preimage is a contiguous label block
    std::vector<int> new_label((size_t)k_raw.n, -1);
    int next = 0;
    for (int v : cycle)
        new_label[(size_t)v] = next++;
    for (int v = 0; v < k_raw.n; ++v)
        if (new_label[(size_t)v] < 0)
            new_label[(size_t)v] = next++;
    graph k_graph(k_raw.n);
    for (auto [u, v] : k_raw.edges())
        k_graph.add_edge(new_label[(size_t)u], new_label[(size_t)v]);

    std::vector<int> embed_pos((size_t)h_pattern.n, -1);
    for (size_t i = 0; i < cr.embedding.size(); ++i)
        embed_pos[(size_t)cr.embedding[i]] = (int)i;
    std::vector<int> class_of((size_t)h, -1);  // original pattern vertex -> core label
    for (int v = 0; v < h; ++v)
        class_of[(size_t)v] = new_label[(size_t)embed_pos[(size_t)cr.retraction.assignment[(size_t)v]]];

    std::vector<int> order((size_t)h);
    for (int v = 0; v < h; ++v)
        order[(size_t)v] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return class_of[(size_t)a] < class_of[(size_t)b]; });
    std::vector<int> pattern_label((size_t)h, -1);
    for (int i = 0; i < h; ++i)
        pattern_label[(size_t)order[(size_t)i]] = i;
    graph pattern(h);
    for (auto [u, v] : h_pattern.edges())
        pattern.add_edge(pattern_label[(size_t)u], pattern_label[(size_t)v]);
    std::vector<int> class_by_position((size_t)h);
    for (int i = 0; i < h; ++i)
        class_by_position[(size_t)i] = class_of[(size_t)order[(size_t)i]];

    opts.m_hint = m_hint ? m_hint : opts.m_hint;
    layered_clique_graph base = layered_cliques(h, delta, opts);

    long long r = base.g.n;
    long long block = n / r;
    if (block < 1)
        fail(errc::degenerate, "order below one vertex per base vertex");
    long long n_eff = r * block;
    if (n_eff > 20000)
        fail(errc::scale, "instance order exceeds guard");

    // base overlay: the pattern's edges on every registry clique, nothing else
    graph overlay((int)r);
    for (const vertex_set& cl : base.cliques)
        for (int i = 0; i < h; ++i)
            for (int j = i + 1; j < h; ++j)
                if (pattern.has_edge(i, j))
                    overlay.add_edge(cl[(size_t)i], cl[(size_t)j]);

    hard_instance out;
    out.kind = "thm13";
    out.n_requested = n;
    out.n_effective = n_eff;
    out.epsilon = epsilon;
    out.h = h;
    out.m = base.m;
    out.r = r;
    out.clique_count = (long long)base.cliques.size();
    out.g = uniform_blowup(overlay, (int)block);
    out.pattern = pattern;
    out.hom_target = k_graph;

    // every vertex of layer j plays pattern position j, hence one core class
    hom_map psi;
    psi.assignment.resize((size_t)n_eff, -1);
    out.parts.assign((size_t)k_graph.n, {});
    for (long long v = 0; v < r; ++v) {
        int cls = class_by_position[(size_t)base.layer_of[(size_t)v]];
        for (long long x = 0; x < block; ++x) {
            psi.assignment[(size_t)(v * block + x)] = cls;
            out.parts[(size_t)cls].push_back((int)(v * block + x));
        }
    }
    for (auto& part : out.parts)
        std::sort(part.begin(), part.end());
    if (!verify_homomorphism(out.g, k_graph, psi))
        fail(errc::consistency, "layer map is not a homomorphism onto the core");
    out.hom = psi;
    out.structure_verified = true;

    out.pack.pattern = pattern;
    out.pack.mode = copy_mode::induced;
    auto tuples = transversal_tuples((int)block, h, opts.budget);
    for (const vertex_set& cl : base.cliques)
        for (const auto& t : tuples) {
            copy_record copy;
            copy.vertices.resize((size_t)h);
            for (int j = 0; j < h; ++j)
                copy.vertices[(size_t)j] = (int)((long long)cl[(size_t)j] * block + t[(size_t)j]);
            out.pack.copies.push_back(std::move(copy));
        }
    verify_packing(out.g, out.pack);

    out.epsilon_achieved = pack_density(out.pack.copies.size(), n_eff);
    if (out.epsilon_achieved < epsilon)
        fail(errc::consistency, "packing below the requested farness");

    out.forbidden.members = {h_pattern};
    return out;
}

hard_instance odd_cycle_blowup_instance(long long k, long long n, unsigned long long budget) {
    if (k < 5 || k % 2 == 0)
        fail(errc::parameter, "cycle length must be odd and at least 5");
    long long block = n / k;
    if (block < 1)
        fail(errc::degenerate, "order below one vertex per cycle position");
    long long n_eff = k * block;
    if (n_eff > graph_order_guard)
        fail(errc::scale, "instance order exceeds guard");

    hard_instance out;
    out.kind = "oddcycle";
    out.n_requested = n;
    out.n_effective = n_eff;
    out.h = (int)k;
    out.r = k;
    out.pattern = cycle_graph((int)k);
    out.g = uniform_blowup(out.pattern, (int)block);
    out.parts.resize((size_t)k);
    for (long long j = 0; j < k; ++j) {
        out.parts[(size_t)j].resize((size_t)block);
        for (long long x = 0; x < block; ++x)
            out.parts[(size_t)j][(size_t)x] = (int)(j * block + x);
    }

    // structural layout: independent blocks, complete consecutive pairs,
    // empty otherwise -- verified directly rather than assumed
    for (long long i = 0; i < k; ++i) {
        if (!is_independent(out.g, out.parts[(size_t)i]))
            fail(errc::consistency, "block holds an internal edge");
        for (long long j = i + 1; j < k; ++j) {
            long long between = edges_between(out.g, out.parts[(size_t)i], out.parts[(size_t)j]);
            bool consecutive = j - i == 1 || (i == 0 && j == k - 1);
            if (consecutive && between != block * block)
                fail(errc::consistency, "consecutive blocks not fully joined");
            if (!consecutive && between != 0)
                fail(errc::consistency, "non-consecutive blocks joined");
        }
    }
    out.structure_verified = true;

    // one breadth-first source per block: the layout just verified makes the
    // vertices of a block interchangeable
    std::vector<int> roots;
    if (n_eff <= 200)
        for (long long v = 0; v < n_eff; ++v)
            roots.push_back((int)v);
    else
        for (long long j = 0; j < k; ++j)
            roots.push_back((int)(j * block));
    long long best = -1;
    for (int root : roots) {
        std::vector<int> dist((size_t)n_eff, -1);
        std::vector<int> queue{root};
        dist[(size_t)root] = 0;
        for (size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            for (int w = 0; w < out.g.n; ++w)
                if (out.g.has_edge(u, w) && dist[(size_t)w] < 0) {
                    dist[(size_t)w] = dist[(size_t)u] + 1;
                    queue.push_back(w);
                }
        }
        for (auto [u, w] : out.g.edges())
            if (dist[(size_t)u] >= 0 && dist[(size_t)w] >= 0 &&
                (dist[(size_t)u] + dist[(size_t)w]) % 2 == 0) {
                long long len = dist[(size_t)u] + dist[(size_t)w] + 1;
                if (best < 0 || len < best)
                    best = len;
            }
    }
    out.odd_girth = best;
    if (best != k)
        fail(errc::consistency, "odd girth differs from the cycle length");

    if (n_eff <= 30) {
        if (count_copies(out.g, cycle_graph(6), copy_mode::induced, budget).copies != 0)
            fail(errc::consistency, "blowup contains an induced 6-cycle");
        for (long long l = 3; l < k; l += 2)
            if (find_cycle_subgraph(out.g, (int)l, budget))
                fail(errc::consistency, "blowup contains a short odd cycle");
        out.exhaustive_small_checks = true;
    }

    out.pack.pattern = out.pattern;
    out.pack.mode = copy_mode::subgraph;
    auto tuples = transversal_tuples((int)block, (int)k, budget);
    for (const auto& t : tuples) {
        copy_record copy;
        copy.vertices.resize((size_t)k);
        for (long long j = 0; j < k; ++j)
            copy.vertices[(size_t)j] = (int)(j * block + t[(size_t)j]);
        out.pack.copies.push_back(std::move(copy));
    }
    verify_packing(out.g, out.pack);

    out.epsilon = pack_density(out.pack.copies.size(), n_eff);
    out.epsilon_achieved = out.epsilon;

    out.forbidden.members = {cycle_graph(6)};
    out.forbidden.subgraph_cycles = {k};
    return out;
}

graph_family escalating_cycle_family(int levels, const std::vector<long long>* override_lengths) {
    if (levels < 1)
        fail(errc::parameter, "need at least one level");

    graph_family fam;
    fam.members = {cycle_graph(6)};
    if (override_lengths) {
        long long prev = 1;
        for (long long len : *override_lengths) {
            if (len < 3 || len % 2 == 0 || len <= prev)
                fail(errc::parameter, "override lengths must be odd and strictly increasing");
            prev = len;
        }
        fam.subgraph_cycles = *override_lengths;
        return fam;
    }

    bigint numeric = 3;
    bool symbolic = false;
    for (int i = 1; i <= levels; ++i) {
        if (symbolic) {
            // the previous term is already astronomically large; this one
            // references it by index instead of expanding digits
            fam.symbolic_cycles.push_back("2^(2*(a" + std::to_string(i - 1) + "+2)^2)+1");
            continue;
        }
        fam.subgraph_cycles.push_back((long long)numeric);
        if (i == levels)
            break;
        bigint exponent = 2 * (numeric + 2) * (numeric + 2);
        if (exponent <= 62) {
            numeric = (bigint(1) << (unsigned)exponent) + 1;
        } else {
            symbolic = true;
            fam.symbolic_cycles.push_back("2^" + exponent.str() + "+1");
            ++i;  // that push emitted the term for the next level
        }
    }
    return fam;
}

} // namespace rlab
