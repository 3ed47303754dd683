#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "removal_lab/construct.hpp"
#include "removal_lab/errors.hpp"
#include "removal_lab/recognize.hpp"

using namespace rlab;

namespace {

// independent oracle: enumerate every coefficient tuple and every value tuple
// including the closing value (no divisibility shortcut)
bool oracle_convex_free(const std::vector<long long>& s, long long k) {
    std::vector<std::vector<long long>> tuples;
    std::vector<long long> cur;
    auto build = [&](auto&& self, long long left) -> void {
        if (cur.size() >= 2)
            tuples.push_back(cur);
        for (long long a = 1; a <= left; ++a) {
            cur.push_back(a);
            self(self, left - a);
            cur.pop_back();
        }
    };
    build(build, k);
    for (const auto& coeffs : tuples) {
        size_t l = coeffs.size();
        std::vector<size_t> pick(l + 1, 0);
        while (true) {
            long long lhs = 0, weight = 0;
            for (size_t i = 0; i < l; ++i) {
                lhs += coeffs[i] * s[pick[i]];
                weight += coeffs[i];
            }
            if (lhs == weight * s[pick[l]]) {
                bool trivial = true;
                for (size_t i = 0; i <= l; ++i)
                    if (s[pick[i]] != s[pick[l]])
                        trivial = false;
                if (!trivial)
                    return false;
            }
            size_t pos = l + 1;
            while (pos > 0 && pick[pos - 1] == s.size() - 1)
                pick[--pos] = 0;
            if (pos == 0)
                break;
            ++pick[pos - 1];
        }
    }
    return true;
}

void check_layered_invariants(const layered_clique_graph& r) {
    long long pairs = (long long)r.h * (r.h + 1) / 2;
    CHECK(r.g.n == pairs * r.m);
    for (int j = 0; j < r.h; ++j) {
        CHECK((long long)r.layers[(size_t)j].size() == (long long)(j + 1) * r.m);
        CHECK(is_independent(r.g, r.layers[(size_t)j]));
    }
    CHECK((long long)r.cliques.size() == r.m * (long long)r.s.members.size());
    // registry meets the requested quadratic density
    rational have = rational::make((long long)r.cliques.size(), 1);
    rational need = r.delta * rational::make((long long)r.g.n * r.g.n, 1);
    CHECK(need <= have);
    for (const auto& cl : r.cliques) {
        CHECK((int)cl.size() == r.h);
        CHECK(is_clique(r.g, cl));
        for (int j = 0; j < r.h; ++j)
            CHECK(r.layer_of[(size_t)cl[(size_t)j]] == j);
    }
    // pairwise edge-disjoint: no two cliques share two vertices
    for (size_t a = 0; a < r.cliques.size(); ++a)
        for (size_t b = a + 1; b < r.cliques.size(); ++b) {
            int shared = 0;
            for (int v : r.cliques[a])
                if (std::binary_search(r.cliques[b].begin(), r.cliques[b].end(), v))
                    ++shared;
            CHECK(shared <= 1);
        }
}

} // namespace

TEST_CASE("digit-shell sets on pinned parameters") {
    behrend_set s = make_behrend_set(5, 2);
    CHECK(s.members == std::vector<long long>{1, 3});
    CHECK(s.verified_exhaustive);

    CHECK(make_behrend_set(50, 7).members == std::vector<long long>{1, 8});
    CHECK(make_behrend_set(17, 4).members == std::vector<long long>{1, 5});
    CHECK(make_behrend_set(25, 4).members == std::vector<long long>{1, 5});

    behrend_set big = make_behrend_set(1000, 4);
    CHECK(big.base == 10);
    CHECK(big.digits == 3);
    CHECK(big.digit_cap == 3);
    CHECK(big.shell == 5);
    CHECK(big.members == std::vector<long long>{12, 21, 102, 120, 201, 210});

    CHECK_THROWS_AS(static_cast<void>(make_behrend_set(1, 2)), error);
    CHECK_THROWS_AS(static_cast<void>(make_behrend_set(5, 1)), error);
    // base too small for the coefficient budget
    CHECK_THROWS_AS(static_cast<void>(make_behrend_set(5, 7)), error);
}

TEST_CASE("generated digit-shell sets pass the independent oracle") {
    for (long long m : {5, 8, 17, 50, 120, 400, 1000})
        for (long long k : {2, 3, 4}) {
            behrend_set s;
            try {
                s = make_behrend_set(m, k);
            } catch (const error& e) {
                CHECK(e.kind == errc::parameter);
                continue;
            }
            CHECK(!s.members.empty());
            CHECK(s.members.front() >= 1);
            CHECK(s.members.back() <= m);
            CHECK(std::is_sorted(s.members.begin(), s.members.end()));
            CHECK(oracle_convex_free(s.members, k));
        }
}

TEST_CASE("convex-free verification on pinned sets") {
    auto bad = verify_convex_free({1, 2, 3}, 2);
    CHECK(bad.exhaustive);
    REQUIRE(!bad.violations.empty());
    CHECK(bad.violations.front().coeffs == std::vector<long long>{1, 1});
    CHECK(bad.violations.front().values == std::vector<long long>{1, 3, 2});

    CHECK(verify_convex_free({1}, 4).violations.empty());
    auto good = verify_convex_free({1, 2, 4, 5}, 2);
    CHECK(good.exhaustive);
    CHECK(good.violations.empty());
    CHECK(oracle_convex_free({1, 2, 4, 5}, 2));
    CHECK_FALSE(oracle_convex_free({1, 2, 3}, 2));

    // tiny budget downgrades to sampling but still finds dense violations
    auto sampled = verify_convex_free({1, 2, 3, 4, 5, 6, 7, 8}, 4, 500);
    CHECK_FALSE(sampled.exhaustive);
    CHECK(!sampled.violations.empty());
}

TEST_CASE("layered clique graphs from a scale hint") {
    layered_options opts;
    opts.m_hint = 8;
    layered_clique_graph r = layered_cliques(3, rational::make(1, 200), opts);
    CHECK(r.m == 8);
    CHECK(r.s.members == std::vector<long long>{1, 3});
    CHECK(r.g.n == 48);
    CHECK(r.cliques.size() == 16);
    check_layered_invariants(r);
    REQUIRE(r.cycle_check_ran);
    CHECK(r.strong_cycle_property);
    // with three layers the only climbing sequence is 1,2,3 and every cycle is
    // one of the registry triangles
    CHECK(r.layered_cycles == 16);
    CHECK(count_layered_cycles(r.g, r.layers, {1, 2, 3}) == 16);

    layered_options bad_hint;
    bad_hint.m_hint = 16;
    CHECK_THROWS_AS(static_cast<void>(layered_cliques(3, rational::make(1, 200), bad_hint)),
                    error);
}

TEST_CASE("layered clique graph scale search") {
    layered_options opts;
    opts.m_cap = 64;
    layered_clique_graph r = layered_cliques(3, rational::make(1, 200), opts);
    CHECK(r.m >= 4);
    CHECK(r.m <= 64);
    check_layered_invariants(r);
    REQUIRE(r.cycle_check_ran);
    CHECK(r.strong_cycle_property);
    CHECK(r.layered_cycles <= (unsigned long long)((long long)r.g.n * r.g.n));

    layered_options opts4;
    opts4.m_cap = 50;
    layered_clique_graph r4 = layered_cliques(4, rational::make(1, 3000), opts4);
    check_layered_invariants(r4);
    REQUIRE(r4.cycle_check_ran);
    CHECK(r4.strong_cycle_property);

    CHECK_THROWS_AS(static_cast<void>(layered_cliques(2, rational::make(1, 10))), error);
    CHECK_THROWS_AS(static_cast<void>(layered_cliques(3, rational::make(0, 1))), error);
    CHECK_THROWS_AS(static_cast<void>(layered_cliques(3, rational::make(1, 1))), error);
    // density no scale can meet
    CHECK_THROWS_AS(static_cast<void>(layered_cliques(8, rational::make(1, 2))), error);
}

TEST_CASE("co-matching apex pattern") {
    graph m = co_matching_apex(3);
    CHECK(m.n == 7);
    CHECK(m.edge_count() == 18);
    for (int i = 0; i < 3; ++i)
        CHECK_FALSE(m.has_edge(2 * i, 2 * i + 1));
    for (int v = 0; v < 6; ++v)
        CHECK(m.has_edge(v, 6));
    CHECK(is_cobipartite(m).has_value());
    CHECK_THROWS_AS(static_cast<void>(co_matching_apex(0)), error);
}

TEST_CASE("eight-cycle overlay instance") {
    rational eps = rational::make(1, 2073600);
    hard_instance inst = cycle8_overlay_instance(4000, eps, 50);
    CHECK(inst.kind == "thm4");
    CHECK(inst.m == 50);
    CHECK(inst.r == 1800);
    CHECK(inst.n_effective == 3600);
    CHECK(inst.clique_count == 100);
    CHECK(inst.pack.copies.size() == 200);
    CHECK(inst.structure_verified);
    CHECK(eps <= inst.epsilon_achieved);
    CHECK(check_cycle8_layout(inst.g, inst.parts));
    REQUIRE(inst.parts.size() == 8);
    for (int j = 0; j < 8; ++j)
        CHECK((long long)inst.parts[(size_t)j].size() == (long long)(j + 1) * 100);
    verify_packing(inst.g, inst.pack);
    CHECK(isomorphic(inst.pattern, cycle_graph(8)));
    REQUIRE(inst.forbidden.members.size() == 2);
    CHECK(inst.forbidden.members[1] == co_matching_apex(3));

    // farness target too large for any scale
    CHECK_THROWS_AS(static_cast<void>(cycle8_overlay_instance(4000, rational::make(1, 32), 50)),
                    error);
    // order below one vertex per base vertex
    CHECK_THROWS_AS(static_cast<void>(cycle8_overlay_instance(1000, eps, 50)), error);
}

TEST_CASE("eight-part layout checker") {
    // plain 8-cycle blowup, odd parts upgraded to cliques
    blowup_spec spec;
    spec.sizes.assign(8, 2);
    spec.clique_part = {1, 0, 1, 0, 1, 0, 1, 0};
    graph g = blowup(cycle_graph(8), spec);
    std::vector<vertex_set> parts = blowup_parts(spec);
    CHECK(check_cycle8_layout(g, parts));

    // an extra chord between parts 1 and 4 breaks the layout
    graph bad = g;
    bad.add_edge(parts[0][0], parts[3][0]);
    CHECK_FALSE(check_cycle8_layout(bad, parts));

    // a missing part edge inside an odd part breaks the clique condition
    graph sparse = g;
    sparse.remove_edge(parts[0][0], parts[0][1]);
    CHECK_FALSE(check_cycle8_layout(sparse, parts));

    graph k8 = complete_graph(8);
    std::vector<vertex_set> singles(8);
    for (int i = 0; i < 8; ++i)
        singles[(size_t)i] = {i};
    CHECK_FALSE(check_cycle8_layout(k8, singles));

    std::vector<vertex_set> overlap = parts;
    overlap[1][0] = parts[0][0];
    CHECK_THROWS_AS(static_cast<void>(check_cycle8_layout(g, overlap)), error);
}

TEST_CASE("core-patterned instance on a triangle") {
    rational eps = rational::make(1, 810);
    hard_instance inst = core_pattern_instance(complete_graph(3), eps, 60, 5);
    CHECK(inst.kind == "thm13");
    CHECK(inst.m == 5);
    CHECK(inst.r == 30);
    CHECK(inst.n_effective == 60);
    CHECK(inst.clique_count == 10);
    CHECK(inst.pack.copies.size() == 40);
    CHECK(eps <= inst.epsilon_achieved);
    CHECK(isomorphic(inst.hom_target, complete_graph(3)));
    CHECK(isomorphic(inst.pattern, complete_graph(3)));
    REQUIRE(inst.hom.has_value());
    CHECK(verify_homomorphism(inst.g, inst.hom_target, *inst.hom));
    verify_packing(inst.g, inst.pack);
    REQUIRE(inst.parts.size() == 3);
    CHECK(inst.parts[0].size() == 10);
    CHECK(inst.parts[1].size() == 20);
    CHECK(inst.parts[2].size() == 30);
    // packed copies hit each core class exactly once
    for (const auto& copy : inst.pack.copies) {
        std::set<int> classes;
        for (int v : copy.vertices)
            classes.insert(inst.hom->assignment[(size_t)v]);
        CHECK(classes.size() == 3);
    }

    CHECK_THROWS_AS(static_cast<void>(core_pattern_instance(cycle_graph(4), eps, 60, 5)), error);
    CHECK_THROWS_AS(
        static_cast<void>(core_pattern_instance(complete_graph(3), rational::make(1, 8), 60, 5)),
        error);
}

TEST_CASE("core-patterned instance on a five-cycle and a paw") {
    rational eps5 = rational::make(2, 95625);
    hard_instance c5 = core_pattern_instance(cycle_graph(5), eps5, 510, 17);
    CHECK(c5.r == 255);
    CHECK(c5.n_effective == 510);
    CHECK(c5.clique_count == 34);
    CHECK(c5.pack.copies.size() == 68);
    CHECK(eps5 <= c5.epsilon_achieved);
    CHECK(isomorphic(c5.hom_target, cycle_graph(5)));
    REQUIRE(c5.hom.has_value());
    CHECK(verify_homomorphism(c5.g, c5.hom_target, *c5.hom));
    verify_packing(c5.g, c5.pack);

    graph paw = graph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    hard_instance pi = core_pattern_instance(paw, rational::make(1, 8000), 200, 10);
    CHECK(pi.r == 100);
    CHECK(pi.n_effective == 200);
    CHECK(isomorphic(pi.hom_target, complete_graph(3)));
    CHECK(isomorphic(pi.pattern, paw));
    REQUIRE(pi.hom.has_value());
    CHECK(verify_homomorphism(pi.g, pi.hom_target, *pi.hom));
    verify_packing(pi.g, pi.pack);
    long long covered = 0;
    for (const auto& part : pi.parts)
        covered += (long long)part.size();
    CHECK(covered == 200);
    // determinism across rebuilds
    hard_instance again = core_pattern_instance(paw, rational::make(1, 8000), 200, 10);
    CHECK(again.g == pi.g);
    CHECK(again.pack.copies.size() == pi.pack.copies.size());
}

TEST_CASE("odd cycle blowups") {
    hard_instance small = odd_cycle_blowup_instance(5, 25);
    CHECK(small.kind == "oddcycle");
    CHECK(small.n_effective == 25);
    CHECK(small.structure_verified);
    CHECK(small.exhaustive_small_checks);
    CHECK(small.odd_girth == 5);
    CHECK(find_induced_copy(small.g, cycle_graph(5)).has_value());
    verify_packing(small.g, small.pack);
    CHECK(small.epsilon == small.epsilon_achieved);

    hard_instance rounded = odd_cycle_blowup_instance(5, 27);
    CHECK(rounded.n_effective == 25);

    hard_instance seven = odd_cycle_blowup_instance(7, 21);
    CHECK(seven.odd_girth == 7);
    CHECK(seven.exhaustive_small_checks);

    hard_instance nine = odd_cycle_blowup_instance(9, 27);
    CHECK(nine.odd_girth == 9);

    hard_instance large = odd_cycle_blowup_instance(5, 1000);
    CHECK(large.n_effective == 1000);
    CHECK(large.odd_girth == 5);
    CHECK_FALSE(large.exhaustive_small_checks);
    CHECK(large.pack.copies.size() >= 1600);  // quadratic floor at block 200
    verify_packing(large.g, large.pack);

    CHECK_THROWS_AS(static_cast<void>(odd_cycle_blowup_instance(4, 20)), error);
    CHECK_THROWS_AS(static_cast<void>(odd_cycle_blowup_instance(3, 9)), error);
    CHECK_THROWS_AS(static_cast<void>(odd_cycle_blowup_instance(5, 4)), error);
}

TEST_CASE("escalating cycle family descriptor") {
    graph_family one = escalating_cycle_family(1);
    REQUIRE(one.members.size() == 1);
    CHECK(one.members[0] == cycle_graph(6));
    CHECK(one.subgraph_cycles == std::vector<long long>{3});
    CHECK(one.symbolic_cycles.empty());

    graph_family two = escalating_cycle_family(2);
    CHECK(two.subgraph_cycles == std::vector<long long>{3, 1125899906842625LL});
    CHECK(two.symbolic_cycles.empty());

    graph_family three = escalating_cycle_family(3);
    CHECK(three.subgraph_cycles == std::vector<long long>{3, 1125899906842625LL});
    REQUIRE(three.symbolic_cycles.size() == 1);
    CHECK(three.symbolic_cycles[0].substr(0, 2) == "2^");
    CHECK(three.symbolic_cycles[0].substr(three.symbolic_cycles[0].size() - 2) == "+1");
    CHECK(three.symbolic_cycles[0].size() > 20);
    CHECK_FALSE(three.fully_explicit());

    graph_family four = escalating_cycle_family(4);
    REQUIRE(four.symbolic_cycles.size() == 2);
    CHECK(four.symbolic_cycles[1] == "2^(2*(a3+2)^2)+1");

    std::vector<long long> override_lengths{3, 7, 11};
    graph_family conc = escalating_cycle_family(3, &override_lengths);
    CHECK(conc.subgraph_cycles == override_lengths);
    CHECK(conc.symbolic_cycles.empty());

    std::vector<long long> even{3, 6};
    CHECK_THROWS_AS(static_cast<void>(escalating_cycle_family(2, &even)), error);
    std::vector<long long> unsorted{5, 3};
    CHECK_THROWS_AS(static_cast<void>(escalating_cycle_family(2, &unsorted)), error);
    CHECK_THROWS_AS(static_cast<void>(escalating_cycle_family(0)), error);
}
