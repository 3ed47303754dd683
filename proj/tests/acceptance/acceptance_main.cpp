// End-to-end acceptance suite: ten independent checks, one verdict line each.
// argv[1] names the command line tool; exit code 0 iff every criterion passes.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "removal_lab/certificates.hpp"
#include "removal_lab/construct.hpp"
#include "removal_lab/count.hpp"
#include "removal_lab/family.hpp"
#include "removal_lab/graph.hpp"
#include "removal_lab/graph_io.hpp"
#include "removal_lab/homomorphism.hpp"
#include "removal_lab/recognize.hpp"
#include "removal_lab/rng.hpp"
#include "removal_lab/tester.hpp"

using namespace rlab;

namespace {

constexpr long long large_trials = 10000;
constexpr double wilson_slack = 1e-12; // display-side float comparisons only
constexpr uint64_t suite_seed = 20240901;

std::string cli_binary;
std::string work_dir;

struct criterion_result {
    bool pass = false;
    std::string detail;
};

std::string path_of(const std::string& name) { return work_dir + "/" + name; }

int run_cli(const std::string& args, const std::string& stdout_file = "") {
    std::string out = stdout_file.empty() ? path_of("cli_stdout.txt") : stdout_file;
    std::string cmd = "\"" + cli_binary + "\" " + args + " >" + out + " 2>" +
                      path_of("cli_stderr.txt");
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

criterion_result fail_with(std::string why) { return {false, std::move(why)}; }

// ---- criterion 1: progression-free sets --------------------------------

criterion_result behrend_suite() {
    std::string detail = "|S|/m";
    for (long long m : {50LL, 200LL, 1000LL}) {
        detail += " m=" + std::to_string(m) + ":[";
        for (long long k : {2LL, 3LL, 4LL}) {
            behrend_set s = make_behrend_set(m, k);
            if (s.members.empty())
                return fail_with("empty set at m=" + std::to_string(m));
            if (!s.verified_exhaustive)
                return fail_with("generator skipped its own verification");
            convex_free_verdict v = verify_convex_free(s.members, k);
            if (!v.exhaustive)
                return fail_with("verification not exhaustive at m=" + std::to_string(m));
            if (!v.violations.empty())
                return fail_with("violation found at m=" + std::to_string(m) +
                                 " k=" + std::to_string(k));
            detail += (k > 2 ? "," : "") + std::to_string(s.members.size());
        }
        detail += "]";
    }
    return {true, detail};
}

// ---- criterion 2: layered clique graphs --------------------------------

criterion_result layered_suite() {
    std::string detail;
    for (int h : {3, 4, 5}) {
        // the registry holds one clique per (offset, difference) pair, so the
        // best density a scale m <= 50 can reach is exactly m*|S| / n(m)^2
        rational best(0);
        long long best_m = 0;
        for (long long m = 2; m <= 50; ++m) {
            behrend_set s;
            try {
                s = make_behrend_set(m, h - 1);
            } catch (const error&) {
                continue; // this scale has no feasible digit shell
            }
            if (s.members.empty()) continue;
            long long n = m * h * (h + 1) / 2;
            rational density = rational::make(m * (long long)s.members.size(), n * n);
            if (best < density) {
                best = density;
                best_m = m;
            }
        }
        if (best == rational(0)) return fail_with("no feasible scale at all");

        // at the peak the feasible-scale set can be a single point, which the
        // geometric sweep may skip, so hand the argmax over as the hint
        layered_options opts;
        opts.m_hint = best_m;
        opts.m_cap = 50;
        layered_clique_graph r = layered_cliques(h, best, opts);

        for (const vertex_set& layer : r.layers)
            if (!is_independent(r.g, layer))
                return fail_with("layer with an internal edge at h=" + std::to_string(h));
        for (const vertex_set& c : r.cliques)
            if ((int)c.size() != h || !is_clique(r.g, c))
                return fail_with("registry entry is not an h-clique");
        for (size_t a = 0; a < r.cliques.size(); ++a)
            for (size_t b = a + 1; b < r.cliques.size(); ++b) {
                int shared = 0;
                for (int u : r.cliques[a])
                    shared += std::binary_search(r.cliques[b].begin(), r.cliques[b].end(), u);
                if (shared > 1)
                    return fail_with("two registry cliques share an edge");
            }
        rational count((long long)r.cliques.size());
        if (count < best * rational((long long)r.g.n * r.g.n))
            return fail_with("clique count below the requested density");
        if (!r.cycle_check_ran || !r.strong_cycle_property)
            return fail_with("a layered cycle escaped its registry clique");

        detail += (h > 3 ? " " : "") + std::string("h=") + std::to_string(h) + ":delta=" +
                  best.str() + ",m=" + std::to_string(r.m) + ",cliques=" +
                  std::to_string(r.cliques.size()) + ",cycles=" +
                  std::to_string(r.layered_cycles);
    }
    return {true, detail};
}

// ---- criterion 3: eight-cycle overlay instance --------------------------

criterion_result overlay_instance() {
    hard_instance inst = cycle8_overlay_instance(4000, rational::make(1, 2073600), 50);
    if (!inst.structure_verified) return fail_with("generator self-check failed");
    if (!check_cycle8_layout(inst.g, inst.parts)) return fail_with("layout check failed");
    verify_packing(inst.g, inst.pack);
    graph c8 = cycle_graph(8);
    for (const copy_record& copy : inst.pack.copies)
        if (!isomorphic(induced_subgraph(inst.g, copy.vertices), c8))
            return fail_with("a packed copy is not an induced eight-cycle");
    rational size((long long)inst.pack.copies.size());
    if (size < inst.epsilon_achieved * rational(inst.n_effective * inst.n_effective))
        return fail_with("packing below the effective farness");
    if (inst.epsilon_achieved < inst.epsilon)
        return fail_with("achieved farness below request");

    save_graph_file(path_of("overlay.g6"), inst.g, graph_format::graph6);
    write_text_file(path_of("overlay.cert.json"),
                    certificates_to_json(instance_certificates(inst)));
    if (run_cli("verify --graph " + path_of("overlay.g6") + " --cert " +
                path_of("overlay.cert.json")) != 0)
        return fail_with("tool verify rejected the shipped certificates");

    return {true, "n_eff=" + std::to_string(inst.n_effective) + " copies=" +
                      std::to_string(inst.pack.copies.size()) + " eps=" +
                      inst.epsilon_achieved.str() + " verify_rc=0"};
}

// ---- criterion 4: core-patterned instances ------------------------------

criterion_result core_pattern_suite() {
    struct spec_case {
        graph pattern;
        rational epsilon;
        long long n;
        long long m_hint;
        bool exhaustive_transversal;
    };
    std::vector<spec_case> cases = {
        {complete_graph(3), rational::make(1, 810), 60, 5, true},
        {cycle_graph(5), rational::make(2, 95625), 510, 17, false},
    };
    std::string detail;
    for (const spec_case& c : cases) {
        hard_instance inst = core_pattern_instance(c.pattern, c.epsilon, c.n, c.m_hint);
        if (!inst.structure_verified) return fail_with("generator self-check failed");
        if (!inst.hom) return fail_with("missing homomorphism certificate");
        if (!verify_homomorphism(inst.g, inst.hom_target, *inst.hom))
            return fail_with("homomorphism certificate does not verify");
        if (!isomorphic(inst.hom_target, core_of(c.pattern).core))
            return fail_with("certificate target is not the pattern core");
        verify_packing(inst.g, inst.pack);
        for (const copy_record& copy : inst.pack.copies)
            if (!isomorphic(induced_subgraph(inst.g, copy.vertices), c.pattern))
                return fail_with("a packed copy does not induce the pattern");
        rational size((long long)inst.pack.copies.size());
        if (size < c.epsilon * rational(c.n * c.n))
            return fail_with("packing below the requested farness");
        if (inst.epsilon_achieved < c.epsilon)
            return fail_with("achieved farness below request");

        if (c.exhaustive_transversal) {
            // every triangle must map onto three distinct core vertices, so no
            // class may contribute two vertices to any copy of the core
            const std::vector<int>& to_core = inst.hom->assignment;
            const graph& g = inst.g;
            for (int a = 0; a < g.n; ++a)
                for (int b = a + 1; b < g.n; ++b) {
                    if (!g.has_edge(a, b)) continue;
                    for (int d = b + 1; d < g.n; ++d) {
                        if (!g.has_edge(a, d) || !g.has_edge(b, d)) continue;
                        if (to_core[a] == to_core[b] || to_core[a] == to_core[d] ||
                            to_core[b] == to_core[d])
                            return fail_with("a copy of the core is not class-transversal");
                    }
                }
        }
        detail += (detail.empty() ? "" : " ") + std::string("order") +
                  std::to_string(c.pattern.n) + ":copies=" +
                  std::to_string(inst.pack.copies.size()) + ",eps=" +
                  inst.epsilon_achieved.str();
    }
    return {true, detail};
}

// ---- small-graph corpus (criteria 5 and 6) -------------------------------

int pair_slot[8][8];

void init_pair_slots(int max_n) {
    int t = 0;
    for (int j = 1; j < max_n; ++j)
        for (int i = 0; i < j; ++i)
            pair_slot[i][j] = pair_slot[j][i] = t++;
}

uint32_t permuted_mask(uint32_t mask, const std::vector<int>& p, int n) {
    uint32_t out = 0;
    int t = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++t)
            if (mask >> pair_slot[p[i]][p[j]] & 1u) out |= 1u << t;
    return out;
}

uint32_t canonical_mask(uint32_t mask, int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    uint32_t best = mask;
    while (std::next_permutation(p.begin(), p.end()))
        best = std::min(best, permuted_mask(mask, p, n));
    return best;
}

graph mask_to_graph(uint32_t mask, int n) {
    graph g(n);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (mask >> pair_slot[i][j] & 1u) g.add_edge(i, j);
    return g;
}

// all graphs up to isomorphism per order, grown one vertex at a time
std::vector<std::vector<uint32_t>> small_graph_masks(int max_n) {
    init_pair_slots(max_n);
    std::vector<std::vector<uint32_t>> levels(max_n + 1);
    levels[1] = {0};
    for (int n = 2; n <= max_n; ++n) {
        int base = n * (n - 1) / 2 - (n - 1); // slots of the pairs (i, n-1)
        std::set<uint32_t> seen;
        for (uint32_t prev : levels[n - 1])
            for (uint32_t nb = 0; nb < (1u << (n - 1)); ++nb)
                seen.insert(canonical_mask(prev | (nb << base), n));
        levels[n].assign(seen.begin(), seen.end());
    }
    return levels;
}

// smallest induced subgraph that still receives a homomorphism from g
graph minimal_hom_target(const graph& g) {
    for (int s = 1; s <= g.n; ++s) {
        std::vector<int> pick(s);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            graph h = induced_subgraph(g, pick);
            if (find_homomorphism(g, h)) return h;
            int i = s - 1;
            while (i >= 0 && pick[i] == g.n - s + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return g;
}

const std::vector<long long> expected_level_counts = {1, 2, 4, 11, 34, 156, 1044};

criterion_result core_oracle_equivalence(const std::vector<std::vector<uint32_t>>& levels) {
    std::string counts;
    for (int n = 1; n <= 7; ++n) {
        if ((long long)levels[n].size() != expected_level_counts[n - 1])
            return fail_with("canonical generation miscounted order " + std::to_string(n));
        counts += (n > 1 ? "/" : "") + std::to_string(levels[n].size());
    }
    long long checked = 0;
    for (int n = 1; n <= 7; ++n)
        for (uint32_t mask : levels[n]) {
            graph g = mask_to_graph(mask, n);
            core_result iterated = core_of(g);
            graph minimal = minimal_hom_target(g);
            if (iterated.core.n != minimal.n || !isomorphic(iterated.core, minimal))
                return fail_with("core mismatch on a graph of order " + std::to_string(n));
            if (!isomorphic(induced_subgraph(g, iterated.embedding), iterated.core))
                return fail_with("core embedding does not induce the core");
            ++checked;
        }
    return {true, "orders 1-7 counts " + counts + ", " + std::to_string(checked) +
                      " graphs, 0 mismatches"};
}

criterion_result recognizer_oracles(const std::vector<std::vector<uint32_t>>& levels) {
    graph c4 = cycle_graph(4), c5 = cycle_graph(5), two_k2 = complement(cycle_graph(4));
    long long split_checked = 0, cobip_checked = 0;
    for (int n = 1; n <= 7; ++n)
        for (uint32_t mask : levels[n]) {
            graph g = mask_to_graph(mask, n);
            auto split = is_split(g);
            bool oracle = !find_induced_copy(g, c4) && !find_induced_copy(g, c5) &&
                          !find_induced_copy(g, two_k2);
            if (split.has_value() != oracle)
                return fail_with("split disagreement at order " + std::to_string(n));
            if (split && (!is_clique(g, split->clique) || !is_independent(g, split->independent)))
                return fail_with("split partition does not verify");
            ++split_checked;

            auto cobip = is_cobipartite(g);
            if (cobip.has_value() != is_bipartite(complement(g)).has_value())
                return fail_with("cobipartite disagreement at order " + std::to_string(n));
            ++cobip_checked;
        }

    long long ramsey_checked = 0;
    for (int k = 2; k <= 4; ++k) {
        long long n = 1;
        for (int i = 0; i < k; ++i) n *= 4;
        for (int trial = 1; trial <= 200; ++trial) {
            graph g = random_graph((int)n, derive_seed(suite_seed, k * 1000 + trial));
            homogeneous_set hs = ramsey_homogeneous_set(g, k);
            if ((int)hs.vertices.size() < k)
                return fail_with("homogeneous set below k at k=" + std::to_string(k));
            if (hs.clique ? !is_clique(g, hs.vertices) : !is_independent(g, hs.vertices))
                return fail_with("homogeneous set does not verify");
            ++ramsey_checked;
        }
    }
    return {true, "split=" + std::to_string(split_checked) + " cobipartite=" +
                      std::to_string(cobip_checked) + " ramsey=" +
                      std::to_string(ramsey_checked) + ", 0 disagreements"};
}

// ---- criterion 7: tester one-sidedness ------------------------------------

graph random_bipartite(int half, uint64_t seed) {
    graph base = random_graph(2 * half, seed);
    graph g(2 * half);
    for (int u = 0; u < half; ++u)
        for (int v = half; v < 2 * half; ++v)
            if (base.has_edge(u, v)) g.add_edge(u, v);
    return g;
}

criterion_result tester_one_sidedness() {
    std::vector<long long> override_lengths = {11};
    graph_family long_cycles = escalating_cycle_family(1, &override_lengths);

    graph_family triangle, cherry;
    triangle.members = {complete_graph(3)};
    cherry.members = {path_graph(3)};

    struct free_case {
        const char* name;
        graph g;
        const graph_family* f;
    };
    std::vector<free_case> cases = {
        {"bipartite", random_bipartite(30, derive_seed(suite_seed, 1)), &triangle},
        {"clique", complete_graph(50), &cherry},
        {"path", path_graph(80), &long_cycles},
    };
    std::string detail;
    for (const free_case& c : cases) {
        test_report r = detection_probability(c.g, *c.f, 8, large_trials,
                                              derive_seed(suite_seed, 2), 8);
        if (r.rejections != 0)
            return fail_with(std::string("rejection on the free ") + c.name + " instance");
        detail += std::string(c.name) + "=0/" + std::to_string(large_trials) + " ";
    }

    hard_instance inst = odd_cycle_blowup_instance(5, 1000);
    test_report r = detection_probability(inst.g, long_cycles, 10, large_trials,
                                          derive_seed(suite_seed, 3), 8);
    if (r.rejections != 0)
        return fail_with("a sample of size 10 rejected the blowup");
    detail += "blowup_q10=0/" + std::to_string(large_trials);

    // exhaustive for q <= 6: vertices in one class are twins, so a sample is
    // determined up to isomorphism by how many vertices it takes per class;
    // checking every class multiset covers every one of the C(1000, q) samples
    long long patterns = 0;
    std::vector<int> take(5, 0);
    std::function<criterion_result(int, int)> sweep = [&](int cls, int left) -> criterion_result {
        if (cls == 5) {
            int total = 6 - left;
            if (total == 0) return {true, ""};
            graph h(total);
            std::vector<int> label;
            for (int c = 0; c < 5; ++c)
                for (int i = 0; i < take[c]; ++i) label.push_back(c);
            for (int u = 0; u < total; ++u)
                for (int v = u + 1; v < total; ++v) {
                    int diff = (label[v] - label[u] + 5) % 5;
                    if (diff == 1 || diff == 4) h.add_edge(u, v);
                }
            ++patterns;
            if (find_family_witness(h, long_cycles))
                return fail_with("a class pattern on " + std::to_string(total) +
                                 " vertices holds a witness");
            return {true, ""};
        }
        for (int c = 0; c <= left; ++c) {
            take[cls] = c;
            criterion_result r2 = sweep(cls + 1, left - c);
            if (!r2.pass) return r2;
        }
        take[cls] = 0;
        return {true, ""};
    };
    criterion_result swept = sweep(0, 6);
    if (!swept.pass) return swept;
    detail += " exhaustive_q<=6_patterns=" + std::to_string(patterns);
    return {true, detail};
}

// ---- criterion 8: farness cross-check -------------------------------------

criterion_result farness_cross_check() {
    graph_family triangle;
    triangle.members = {complete_graph(3)};
    int equal = 0;
    for (int trial = 1; trial <= 100; ++trial) {
        graph g = random_graph(7, derive_seed(suite_seed, 4000 + trial));
        farness_certificate lower = epsilon_far_lower_bound(g, triangle);
        farness_certificate exact = exact_edit_distance(g, triangle);
        if (lower.value > exact.value)
            return fail_with("packing bound exceeded the exact distance at trial " +
                             std::to_string(trial));
        if (lower.value == exact.value) ++equal;
    }
    if (exact_edit_distance(complete_graph(3), triangle).value != 1)
        return fail_with("a lone triangle needs exactly one edit");
    return {true, "bound<=exact on 100/100, equality " + std::to_string(equal) +
                      "/100, triangle distance 1"};
}

// ---- criterion 9: sampling experiments ------------------------------------

bool frequency_clears_bar(const test_report& r) {
    double radius = (r.ci_high - r.ci_low) / 2;
    return r.upper_reaches_two_thirds &&
           r.frequency.to_double() + radius >= 2.0 / 3.0 - wilson_slack;
}

criterion_result sampling_experiments() {
    graph c4 = cycle_graph(4);
    blowup_spec spec;
    spec.sizes.assign(4, 10);
    spec.clique_part.assign(4, 0);
    graph b = blowup(c4, spec);
    sample_experiment_report dense = counting_lemma_experiment(
        b, c4, blowup_parts(spec), rational::make(1, 4), large_trials,
        derive_seed(suite_seed, 5));
    if (dense.requested_sample != 144)
        return fail_with("dense experiment requested an unexpected sample");
    if (!frequency_clears_bar(dense.stats))
        return fail_with("dense-pair frequency fell below the bar");

    bipartite_pattern edge{1, 1, {1}};
    sample_experiment_report cross = bipartite_sample_experiment(
        complete_bipartite(15, 15), edge, rational::make(1, 100), large_trials,
        derive_seed(suite_seed, 6));
    if (cross.requested_sample != 400)
        return fail_with("cross experiment requested an unexpected sample");
    if (!frequency_clears_bar(cross.stats))
        return fail_with("cross-pattern frequency fell below the bar");

    return {true, "dense=" + dense.stats.frequency.str() + " (sample " +
                      std::to_string(dense.sample_size) + "/" +
                      std::to_string(dense.requested_sample) + "), cross=" +
                      cross.stats.frequency.str() + " (sample " +
                      std::to_string(cross.sample_size) + "/" +
                      std::to_string(cross.requested_sample) + ")"};
}

// ---- criterion 10: determinism --------------------------------------------

criterion_result cli_determinism() {
    if (run_cli("gen random --n 120 --seed 13 --out " + path_of("det.g6")) != 0)
        return fail_with("generation failed");
    graph_family triangle;
    triangle.members = {complete_graph(3)};
    write_text_file(path_of("det_family.json"), family_to_json(triangle));

    std::string base = "test --graph " + path_of("det.g6") + " --family " +
                       path_of("det_family.json") + " --q 9 --trials 5000 --seed 21";
    if (run_cli(base + " --threads 1", path_of("det_a.txt")) != 0)
        return fail_with("single-thread run failed");
    if (run_cli(base + " --threads 1", path_of("det_b.txt")) != 0)
        return fail_with("repeat run failed");
    if (run_cli(base + " --threads 8", path_of("det_c.txt")) != 0)
        return fail_with("eight-thread run failed");
    std::string a = slurp(path_of("det_a.txt"));
    if (a.empty() || a != slurp(path_of("det_b.txt")))
        return fail_with("repeat run changed the report");
    if (a != slurp(path_of("det_c.txt")))
        return fail_with("thread count changed the report");
    return {true, "3 runs, byte-identical reports across --threads 1/8"};
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-removal-lab-binary>\n", argv[0]);
        return 2;
    }
    cli_binary = argv[1];
    auto dir = std::filesystem::temp_directory_path() /
               ("removal_lab_acceptance_" + std::to_string(getpid()));
    std::filesystem::create_directories(dir);
    work_dir = dir.string();

    auto levels = small_graph_masks(7);

    struct criterion {
        const char* label;
        std::function<criterion_result()> run;
    };
    std::vector<criterion> table = {
        {"progression-free sets verify exhaustively", behrend_suite},
        {"layered clique graphs at peak density", layered_suite},
        {"eight-cycle overlay instance with certificates", overlay_instance},
        {"core-patterned instances verify end to end", core_pattern_suite},
        {"retraction core equals minimal core on small graphs",
         [&] { return core_oracle_equivalence(levels); }},
        {"recognizers agree with oracles", [&] { return recognizer_oracles(levels); }},
        {"tester never rejects free instances", tester_one_sidedness},
        {"packing bound stays below exact distance", farness_cross_check},
        {"sampling experiments clear the two-thirds bar", sampling_experiments},
        {"reports are byte-identical across threads", cli_determinism},
    };

    int passed = 0;
    for (size_t i = 0; i < table.size(); ++i) {
        criterion_result r;
        try {
            r = table[i].run();
        } catch (const error& e) {
            r = {false, std::string(errc_name(e.kind)) + ": " + e.what()};
        } catch (const std::exception& e) {
            r = {false, e.what()};
        }
        std::printf("criterion %02zu [%s]: %s%s%s\n", i + 1, table[i].label,
                    r.pass ? "PASS" : "FAIL", r.detail.empty() ? "" : " ",
                    r.detail.c_str());
        std::fflush(stdout);
        passed += r.pass;
    }
    std::printf("acceptance: %d/10 criteria passed\n", passed);
    return passed == 10 ? 0 : 1;
}
