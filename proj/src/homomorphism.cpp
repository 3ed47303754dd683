#include "removal_lab/homomorphism.hpp"

#include <algorithm>
#include <numeric>

#include "removal_lab/errors.hpp"
#include "removal_lab/graph_io.hpp"

namespace rlab {

namespace {

constexpr int hom_source_cap = 32;
constexpr int hom_target_cap = 12;
constexpr int canonical_cap = 9;
constexpr int exhaustive_core_cap = 9;

// breadth-first order over one component so every vertex after the root has
// an already-ordered neighbor
void component_order(const graph& g, std::vector<char>& seen, int root, std::vector<int>& order) {
    std::vector<int> queue{root};
    seen[root] = 1;
    size_t head = 0;
    while (head < queue.size()) {
        int u = queue[head++];
        order.push_back(u);
        for (int w = 0; w < g.n; ++w)
            if (!seen[w] && g.has_edge(u, w)) {
                seen[w] = 1;
                queue.push_back(w);
            }
    }
}

bool extend(const graph& source, const graph& target, const std::vector<int>& order,
            const std::vector<std::vector<int>>& placed_neighbors, size_t pos,
            std::vector<int>& assignment, unsigned long long budget, unsigned long long& nodes) {
    if (pos == order.size())
        return true;
    int v = order[pos];
    for (int image = 0; image < target.n; ++image) {
        if (++nodes > budget)
            fail(errc::scale, "homomorphism search exceeded node budget");
        bool ok = true;
        for (int u : placed_neighbors[pos])
            if (assignment[u] == image || !target.has_edge(assignment[u], image)) {
                ok = false;
                break;
            }
        if (!ok)
            continue;
        assignment[v] = image;
        if (extend(source, target, order, placed_neighbors, pos + 1, assignment, budget, nodes))
            return true;
        assignment[v] = -1;
    }
    return false;
}

std::vector<int> positions_in(const vertex_set& s) {
    std::vector<int> pos;
    int top = s.empty() ? 0 : s.back() + 1;
    pos.assign(top, -1);
    for (size_t i = 0; i < s.size(); ++i)
        pos[s[i]] = static_cast<int>(i);
    return pos;
}

// every subset of v(g) of the given size, ascending lexicographic
template <typename Visit>
void for_each_subset(int n, int size, Visit visit) {
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    if (size > n)
        return;
    while (true) {
        visit(pick);
        int i = size - 1;
        while (i >= 0 && pick[i] == n - size + i)
            --i;
        if (i < 0)
            return;
        ++pick[i];
        for (int j = i + 1; j < size; ++j)
            pick[j] = pick[j - 1] + 1;
    }
}

} // namespace

bool verify_homomorphism(const graph& source, const graph& target, const hom_map& f) {
    if (static_cast<int>(f.assignment.size()) != source.n)
        return false;
    for (int v : f.assignment)
        if (v < 0 || v >= target.n)
            return false;
    for (auto [u, v] : source.edges()) {
        int a = f.assignment[u], b = f.assignment[v];
        if (a == b || !target.has_edge(a, b))
            return false;
    }
    return true;
}

std::optional<hom_map> find_homomorphism(const graph& source, const graph& target,
                                         unsigned long long node_budget) {
    if (source.n > hom_source_cap)
        fail(errc::scale, "homomorphism source exceeds order cap");
    if (target.n > hom_target_cap)
        fail(errc::scale, "homomorphism target exceeds order cap");
    if (source.n == 0)
        return hom_map{};
    if (target.n == 0)
        return std::nullopt;

    std::vector<int> order;
    order.reserve(source.n);
    std::vector<char> seen(source.n, 0);
    for (int v = 0; v < source.n; ++v)
        if (!seen[v])
            component_order(source, seen, v, order);

    std::vector<int> at(source.n);
    for (size_t i = 0; i < order.size(); ++i)
        at[order[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> placed_neighbors(order.size());
    for (size_t i = 0; i < order.size(); ++i)
        for (int u = 0; u < source.n; ++u)
            if (source.has_edge(order[i], u) && at[u] < static_cast<int>(i))
                placed_neighbors[i].push_back(u);

    std::vector<int> assignment(source.n, -1);
    unsigned long long nodes = 0;
    if (!extend(source, target, order, placed_neighbors, 0, assignment, node_budget, nodes))
        return std::nullopt;
    return hom_map{assignment};
}

core_result core_of(const graph& g, int order_cap, unsigned long long node_budget) {
    if (g.n > order_cap)
        fail(errc::scale, "core search exceeds order cap");

    vertex_set live(g.n);
    std::iota(live.begin(), live.end(), 0);
    std::vector<int> retraction(g.n);
    std::iota(retraction.begin(), retraction.end(), 0);

    bool shrunk = true;
    while (shrunk && live.size() > 1) {
        shrunk = false;
        for (size_t drop = 0; drop < live.size(); ++drop) {
            vertex_set smaller = live;
            smaller.erase(smaller.begin() + static_cast<long>(drop));
            auto h = find_homomorphism(induced_subgraph(g, live), induced_subgraph(g, smaller),
                                       node_budget);
            if (!h)
                continue;
            auto pos = positions_in(live);
            for (int v = 0; v < g.n; ++v)
                retraction[v] = smaller[h->assignment[static_cast<size_t>(pos[retraction[v]])]];
            live = smaller;
            shrunk = true;
            break;
        }
    }

    core_result out;
    out.embedding = live;
    out.core = induced_subgraph(g, live);
    out.retraction = hom_map{retraction};

    if (g.n > 0 && !verify_homomorphism(g, g, out.retraction))
        fail(errc::consistency, "composed retraction is not a homomorphism");
    auto pos = positions_in(live);
    for (int v : retraction)
        if (pos.empty() || v >= static_cast<int>(pos.size()) || pos[v] < 0)
            fail(errc::consistency, "retraction image leaves the core");
    std::vector<char> hit(live.size(), 0);
    for (int v : live) {
        size_t slot = static_cast<size_t>(pos[retraction[v]]);
        if (hit[slot])
            fail(errc::consistency, "retraction is not injective on the core");
        hit[slot] = 1;
    }
    for (size_t i = 0; i < live.size(); ++i)
        for (size_t j = i + 1; j < live.size(); ++j) {
            bool host = g.has_edge(live[i], live[j]);
            bool image = g.has_edge(retraction[live[i]], retraction[live[j]]);
            if (host != image)
                fail(errc::consistency, "retraction does not fix the core up to isomorphism");
        }

    if (g.n <= exhaustive_core_cap)
        for (int size = 1; size < static_cast<int>(live.size()); ++size)
            for_each_subset(g.n, size, [&](const std::vector<int>& pick) {
                if (find_homomorphism(g, induced_subgraph(g, pick), node_budget))
                    fail(errc::consistency, "vertex deletion missed a smaller core");
            });
    return out;
}

std::string canonical_graph6(const graph& g) {
    if (g.n > canonical_cap)
        fail(errc::scale, "canonical form exceeds order cap");
    if (g.n == 0)
        return to_graph6(g);
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    uint64_t best_code = ~0ull;
    do {
        uint64_t code = 0;
        for (int j = 1; j < g.n; ++j)
            for (int i = 0; i < j; ++i)
                code = (code << 1) | static_cast<uint64_t>(g.has_edge(perm[i], perm[j]));
        if (code < best_code) {
            best_code = code;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    graph out(g.n);
    for (int j = 1; j < g.n; ++j)
        for (int i = 0; i < j; ++i)
            if (g.has_edge(best[i], best[j]))
                out.add_edge(i, j);
    return to_graph6(out);
}

core_poset_result core_poset(const graph_family& f, int order_cap,
                             unsigned long long node_budget) {
    if (!f.fully_explicit())
        fail(errc::parameter, "core order needs every family member materialized");
    if (f.members.empty())
        fail(errc::parameter, "core order needs a nonempty family");

    core_poset_result out;
    for (const graph& member : f.members) {
        graph c = core_of(member, order_cap, node_budget).core;
        int cls = -1;
        for (size_t i = 0; i < out.classes.size(); ++i)
            if (isomorphic(out.classes[i], c)) {
                cls = static_cast<int>(i);
                break;
            }
        if (cls < 0) {
            cls = static_cast<int>(out.classes.size());
            out.classes.push_back(c);
        }
        out.member_class.push_back(cls);
    }

    size_t k = out.classes.size();
    out.leq.assign(k, std::vector<uint8_t>(k, 0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            out.leq[i][j] =
                i == j || find_homomorphism(out.classes[j], out.classes[i], node_budget).has_value();
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
            if (out.leq[i][j] && out.leq[j][i])
                fail(errc::consistency, "distinct core classes compare equal");

    std::vector<size_t> maximal;
    for (size_t i = 0; i < k; ++i) {
        bool top = true;
        for (size_t j = 0; j < k && top; ++j)
            if (j != i && out.leq[i][j])
                top = false;
        if (top)
            maximal.push_back(i);
    }
    if (maximal.empty())
        fail(errc::consistency, "core order has no maximal element");
    size_t pick = maximal.front();
    if (maximal.size() > 1) {
        std::string best = canonical_graph6(out.classes[pick]);
        for (size_t i = 1; i < maximal.size(); ++i) {
            std::string key = canonical_graph6(out.classes[maximal[i]]);
            if (key < best) {
                best = key;
                pick = maximal[i];
            }
        }
    }
    out.chosen_class = static_cast<int>(pick);
    out.kf = out.classes[pick];
    return out;
}

vertex_set core_restriction_witness(const graph& f_graph, const graph& k_graph, const hom_map& f,
                                 unsigned long long node_budget) {
    if (!verify_homomorphism(f_graph, k_graph, f))
        fail(errc::condition, "map is not a homomorphism into the target");

    core_result cr = core_of(f_graph, hom_target_cap, node_budget);
    const vertex_set& x = cr.embedding;
    if (static_cast<int>(x.size()) != k_graph.n)
        fail(errc::consistency, "core order differs from target order");
    std::vector<char> used(static_cast<size_t>(k_graph.n), 0);
    for (int v : x) {
        int image = f.assignment[v];
        if (used[static_cast<size_t>(image)])
            fail(errc::consistency, "map is not injective on the core");
        used[static_cast<size_t>(image)] = 1;
    }
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
            if (f_graph.has_edge(x[i], x[j]) != k_graph.has_edge(f.assignment[x[i]], f.assignment[x[j]]))
                fail(errc::consistency, "map restricted to the core is not an isomorphism");
    return x;
}

} // namespace rlab
