#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "removal_lab/certificates.hpp"
#include "removal_lab/construct.hpp"
#include "removal_lab/count.hpp"
#include "removal_lab/graph_io.hpp"
#include "removal_lab/homomorphism.hpp"
#include "removal_lab/partition.hpp"
#include "removal_lab/recognize.hpp"
#include "removal_lab/tester.hpp"

using namespace rlab;

namespace {

// Reports go to stdout as "key: value" lines under a schema-version header.
// No clocks, hostnames or paths: identical configuration, identical bytes.
struct report {
    std::vector<std::pair<std::string, std::string>> rows;

    void add(const std::string& k, const std::string& v) { rows.push_back({k, v}); }
    void add(const std::string& k, const char* v) { add(k, std::string(v)); }
    void add(const std::string& k, long long v) { add(k, std::to_string(v)); }
    void add(const std::string& k, unsigned long long v) { add(k, std::to_string(v)); }
    void add(const std::string& k, int v) { add(k, std::to_string(v)); }
    void add(const std::string& k, uint64_t v) { add(k, std::to_string(v)); }
    void add(const std::string& k, const rational& v) { add(k, v.str()); }
    void add(const std::string& k, bool v) { add(k, v ? "true" : "false"); }

    void print() const {
        std::cout << "removal-lab-report/1\n";
        for (const auto& [k, v] : rows)
            std::cout << k << ": " << v << "\n";
    }
};

std::string fixed9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
}

rational parse_rational_arg(const std::string& s) {
    try {
        size_t slash = s.find('/');
        if (slash == std::string::npos) {
            size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return rational(v);
        }
        size_t used_n = 0, used_d = 0;
        long long num = std::stoll(s.substr(0, slash), &used_n);
        std::string den_text = s.substr(slash + 1);
        long long den = std::stoll(den_text, &used_d);
        if (used_n != slash || used_d != den_text.size()) throw std::invalid_argument(s);
        return rational::make(num, den);
    } catch (const std::exception&) {
        fail(errc::parameter, "cannot parse rational value: " + s);
    }
}

std::vector<int> parse_grid_arg(const std::string& s) {
    std::vector<int> grid;
    size_t at = 0;
    try {
        while (at < s.size()) {
            size_t used = 0;
            grid.push_back(std::stoi(s.substr(at), &used));
            at += used;
            if (at < s.size()) {
                if (s[at] != ',') throw std::invalid_argument(s);
                ++at;
            }
        }
    } catch (const std::exception&) {
        fail(errc::parameter, "cannot parse sample-size grid: " + s);
    }
    if (grid.empty())
        fail(errc::parameter, "empty sample-size grid");
    return grid;
}

int default_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    return (int)std::clamp(hw, 1u, 64u);
}

copy_mode parse_mode(const std::string& s) {
    if (s == "induced") return copy_mode::induced;
    if (s == "subgraph") return copy_mode::subgraph;
    fail(errc::parameter, "mode must be induced or subgraph");
}

graph_format parse_format(const std::string& s) {
    if (s == "graph6") return graph_format::graph6;
    if (s == "edges") return graph_format::edges;
    fail(errc::parameter, "format must be graph6 or edges");
}

void add_instance_rows(report& rep, const hard_instance& inst) {
    rep.add("kind", inst.kind);
    rep.add("n_requested", inst.n_requested);
    rep.add("n_effective", inst.n_effective);
    rep.add("epsilon", inst.epsilon);
    rep.add("epsilon_achieved", inst.epsilon_achieved);
    rep.add("packing_copies", (long long)inst.pack.copies.size());
    rep.add("pattern_order", inst.pattern.n);
    if (inst.m) rep.add("m", inst.m);
    if (inst.r) rep.add("r", inst.r);
    if (inst.clique_count) rep.add("clique_count", inst.clique_count);
    if (inst.odd_girth) rep.add("odd_girth", inst.odd_girth);
    rep.add("structure_verified", inst.structure_verified);
}

void write_meta(const std::string& path, const hard_instance& inst) {
    nlohmann::json j;
    j["kind"] = inst.kind;
    j["epsilon"] = inst.epsilon_achieved.str();
    j["n_effective"] = inst.n_effective;
    write_text_file(path, j.dump(2) + "\n");
}

rational sidecar_epsilon(const std::string& graph_path) {
    std::string meta_path = graph_path + ".meta.json";
    std::error_code ec;
    if (!std::filesystem::exists(meta_path, ec))
        return rational(0);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(meta_path));
    } catch (const nlohmann::json::exception& e) {
        fail(errc::format, std::string("meta file: ") + e.what());
    }
    if (!j.contains("epsilon"))
        return rational(0);
    return parse_rational_arg(j["epsilon"].get<std::string>());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"removal-lab: property-testing toolkit for hereditary graph families"};
    app.require_subcommand(1);

    uint64_t seed = 1;
    int threads = default_threads();
    unsigned long long budget = default_node_budget;
    std::string format_name = "graph6";
    app.add_option("--seed", seed, "base seed for all randomized paths")
        ->envname("REMOVAL_LAB_SEED");
    app.add_option("--threads", threads, "worker threads for trial loops")
        ->check(CLI::Range(1, 64));
    app.add_option("--budget-nodes", budget, "backtracking node budget");
    app.add_option("--format", format_name, "output graph format: graph6 | edges");

    int rc = 0;

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate graphs, hard instances and certificates");
    gen->require_subcommand(1);

    auto* hard = gen->add_subcommand("hard", "hard instance generators");
    std::string hard_kind, hard_out, hard_cert, hard_meta, hard_pattern;
    long long hard_n = 0, hard_k = 5;
    std::string hard_eps;
    long long hard_m_hint = 0;
    hard->add_option("--kind", hard_kind, "thm4 | thm13 | oddcycle")->required();
    hard->add_option("--n", hard_n, "requested order")->required();
    hard->add_option("--epsilon", hard_eps, "requested farness, p/q");
    hard->add_option("--k", hard_k, "cycle length (oddcycle)");
    hard->add_option("--pattern", hard_pattern, "pattern graph file (thm13)");
    hard->add_option("--m-hint", hard_m_hint, "skip the scale search");
    hard->add_option("--out", hard_out, "graph output path")->required();
    hard->add_option("--cert", hard_cert, "certificate sidecar path");
    hard->add_option("--meta", hard_meta, "instance metadata path");
    hard->callback([&] {
        std::optional<long long> hint;
        if (hard_m_hint) hint = hard_m_hint;
        hard_instance inst;
        if (hard_kind == "thm4") {
            if (hard_eps.empty()) fail(errc::parameter, "thm4 needs --epsilon");
            inst = cycle8_overlay_instance(hard_n, parse_rational_arg(hard_eps), hint);
        } else if (hard_kind == "thm13") {
            if (hard_eps.empty()) fail(errc::parameter, "thm13 needs --epsilon");
            graph pattern =
                hard_pattern.empty() ? complete_graph(3) : load_graph_file(hard_pattern);
            inst = core_pattern_instance(pattern, parse_rational_arg(hard_eps), hard_n, hint);
        } else if (hard_kind == "oddcycle") {
            inst = odd_cycle_blowup_instance(hard_k, hard_n);
        } else {
            fail(errc::parameter, "unknown kind: " + hard_kind);
        }
        save_graph_file(hard_out, inst.g, parse_format(format_name));
        if (!hard_cert.empty())
            write_text_file(hard_cert, certificates_to_json(instance_certificates(inst)));
        if (!hard_meta.empty())
            write_meta(hard_meta, inst);
        report rep;
        add_instance_rows(rep, inst);
        rep.add("seed", seed);
        rep.print();
    });

    auto* rs = gen->add_subcommand("rs", "layered clique graph");
    rs->set_help_flag("--help", "print help"); // frees -h so --h can name the clique size
    int rs_h = 3;
    std::string rs_delta, rs_out, rs_cert;
    long long rs_m_hint = 0, rs_m_cap = 512;
    rs->add_option("--h", rs_h, "clique size")->required();
    rs->add_option("--delta", rs_delta, "clique density target, p/q")->required();
    rs->add_option("--m-hint", rs_m_hint, "skip the scale search");
    rs->add_option("--m-cap", rs_m_cap, "scale search cap");
    rs->add_option("--out", rs_out, "graph output path")->required();
    rs->add_option("--cert", rs_cert, "certificate sidecar path");
    rs->callback([&] {
        layered_options opts;
        if (rs_m_hint) opts.m_hint = rs_m_hint;
        opts.m_cap = rs_m_cap;
        opts.budget = budget;
        layered_clique_graph r = layered_cliques(rs_h, parse_rational_arg(rs_delta), opts);
        save_graph_file(rs_out, r.g, parse_format(format_name));
        if (!rs_cert.empty())
            write_text_file(rs_cert, certificates_to_json(layered_certificates(r)));
        report rep;
        rep.add("h", rs_h);
        rep.add("m", r.m);
        rep.add("set_size", (long long)r.s.members.size());
        rep.add("vertices", r.g.n);
        rep.add("cliques", (long long)r.cliques.size());
        rep.add("cycle_check_ran", r.cycle_check_ran);
        if (r.cycle_check_ran) {
            rep.add("layered_cycles", r.layered_cycles);
            rep.add("strong_cycle_property", r.strong_cycle_property);
        }
        rep.add("seed", seed);
        rep.print();
    });

    auto* rnd = gen->add_subcommand("random", "seeded random graph");
    int rnd_n = 0;
    std::string rnd_p = "1/2", rnd_out;
    rnd->add_option("--n", rnd_n, "order")->required();
    rnd->add_option("--p", rnd_p, "edge probability, p/q");
    rnd->add_option("--out", rnd_out, "graph output path")->required();
    rnd->callback([&] {
        graph g = random_graph(rnd_n, parse_rational_arg(rnd_p), seed);
        save_graph_file(rnd_out, g, parse_format(format_name));
        report rep;
        rep.add("n", g.n);
        rep.add("edges", g.edge_count());
        rep.add("seed", seed);
        rep.print();
    });

    // ---- classify -------------------------------------------------------
    auto* classify = app.add_subcommand("classify", "recognizers on a graph or family");
    std::string cls_graph, cls_family;
    int cls_vc_cap = 0;
    classify->add_option("--graph", cls_graph, "graph file");
    classify->add_option("--family", cls_family, "family file");
    classify->add_option("--vc-cap", cls_vc_cap,
                         "also report VC dimension when the order is at most this cap");
    classify->callback([&] {
        if (cls_graph.empty() && cls_family.empty())
            fail(errc::parameter, "classify needs --graph or --family");
        report rep;
        if (!cls_graph.empty()) {
            graph g = load_graph_file(cls_graph);
            rep.add("n", g.n);
            rep.add("edges", g.edge_count());
            rep.add("bipartite", is_bipartite(g).has_value());
            rep.add("cobipartite", is_cobipartite(g).has_value());
            rep.add("split", is_split(g).has_value());
            if (cls_vc_cap > 0) {
                if (g.n <= cls_vc_cap)
                    rep.add("vc_dimension", vc_dimension(g, cls_vc_cap));
                else
                    rep.add("vc_dimension", "skipped, order above the exhaustive cap");
            }
        }
        if (!cls_family.empty()) {
            family_conditions fc = check_family_conditions(load_family_file(cls_family));
            rep.add("members", (long long)fc.per_member.size());
            rep.add("has_bipartite", fc.has_bipartite);
            rep.add("has_cobipartite", fc.has_cobipartite);
            rep.add("has_split", fc.has_split);
            rep.add("sufficient_for_easy_testing", fc.sufficient_for_easy_testing);
            rep.add("necessary_for_easy_testing", fc.necessary_for_easy_testing);
        }
        rep.add("seed", seed);
        rep.print();
    });

    // ---- count / pack ---------------------------------------------------
    auto* count = app.add_subcommand("count", "embedding counts");
    std::string cnt_graph, cnt_pattern, cnt_mode = "induced";
    count->add_option("--graph", cnt_graph, "graph file")->required();
    count->add_option("--pattern", cnt_pattern, "pattern graph file")->required();
    count->add_option("--mode", cnt_mode, "induced | subgraph");
    count->callback([&] {
        graph g = load_graph_file(cnt_graph);
        graph pattern = load_graph_file(cnt_pattern);
        count_result r = count_copies(g, pattern, parse_mode(cnt_mode), budget);
        report rep;
        rep.add("n", g.n);
        rep.add("pattern_order", pattern.n);
        rep.add("mode", cnt_mode);
        rep.add("copies", r.copies.str());
        rep.add("labeled", r.labeled);
        rep.add("automorphisms", r.aut);
        rep.add("seed", seed);
        rep.print();
    });

    auto* pack = app.add_subcommand("pack", "greedy pair-disjoint packing");
    std::string pk_graph, pk_pattern, pk_mode = "induced", pk_cert;
    pack->add_option("--graph", pk_graph, "graph file")->required();
    pack->add_option("--pattern", pk_pattern, "pattern graph file")->required();
    pack->add_option("--mode", pk_mode, "induced | subgraph");
    pack->add_option("--cert", pk_cert, "certificate sidecar path");
    pack->callback([&] {
        graph g = load_graph_file(pk_graph);
        graph pattern = load_graph_file(pk_pattern);
        packing p = greedy_pair_disjoint_packing(g, pattern, parse_mode(pk_mode), budget);
        if (!pk_cert.empty()) {
            certificate_bundle b;
            certificate c;
            c.kind = certificate_kind::packing;
            c.label = "greedy-packing";
            c.pack = p;
            c.stated_size = (long long)p.copies.size();
            b.items.push_back(std::move(c));
            write_text_file(pk_cert, certificates_to_json(b));
        }
        report rep;
        rep.add("n", g.n);
        rep.add("pattern_order", pattern.n);
        rep.add("mode", pk_mode);
        rep.add("copies", (long long)p.copies.size());
        rep.add("epsilon_equivalent",
                g.n ? rational::make((long long)p.copies.size(), (long long)g.n * g.n)
                    : rational(0));
        rep.add("seed", seed);
        rep.print();
    });

    // ---- core / kf --------------------------------------------------------
    auto* core = app.add_subcommand("core", "homomorphism core of a graph");
    std::string core_graph;
    int core_cap = 12;
    core->add_option("--graph", core_graph, "graph file")->required();
    core->add_option("--order-cap", core_cap, "largest host order attempted");
    core->callback([&] {
        graph g = load_graph_file(core_graph);
        core_result r = core_of(g, core_cap, budget);
        report rep;
        rep.add("n", g.n);
        rep.add("core_order", r.core.n);
        rep.add("core_graph6", to_graph6(r.core));
        std::string emb;
        for (int v : r.embedding) emb += (emb.empty() ? "" : " ") + std::to_string(v);
        rep.add("embedding", emb);
        rep.add("seed", seed);
        rep.print();
    });

    auto* kf = app.add_subcommand("kf", "maximal core of a family");
    std::string kf_family;
    int kf_cap = 12;
    kf->add_option("--family", kf_family, "family file")->required();
    kf->add_option("--order-cap", kf_cap, "largest member order attempted");
    kf->callback([&] {
        graph_family f = load_family_file(kf_family);
        core_poset_result r = core_poset(f, kf_cap, budget);
        report rep;
        rep.add("members", (long long)r.member_class.size());
        rep.add("classes", (long long)r.classes.size());
        for (size_t i = 0; i < r.member_class.size(); ++i)
            rep.add("member_" + std::to_string(i) + "_class", r.member_class[(size_t)i]);
        rep.add("chosen_class", r.chosen_class);
        rep.add("kf_order", r.kf.n);
        rep.add("kf_graph6", to_graph6(r.kf));
        rep.add("seed", seed);
        rep.print();
    });

    // ---- partition --------------------------------------------------------
    auto* part = app.add_subcommand("partition", "search for a homogeneous block partition");
    std::string pt_graph, pt_delta;
    int pt_max_parts = 64;
    part->add_option("--graph", pt_graph, "graph file")->required();
    part->add_option("--delta", pt_delta, "homogeneity level, p/q")->required();
    part->add_option("--max-parts", pt_max_parts, "part budget per side");
    part->callback([&] {
        graph g = load_graph_file(pt_graph);
        auto found = find_homogeneous_partition(g, parse_rational_arg(pt_delta), pt_max_parts);
        report rep;
        rep.add("n", g.n);
        rep.add("delta", pt_delta);
        rep.add("found", found.has_value());
        if (found) {
            rep.add("rows", (long long)found->partition.rows.size());
            rep.add("cols", (long long)found->partition.cols.size());
            rep.add("blocks_checked", found->report.blocks_checked);
            rep.add("non_homogeneous_weight", found->report.non_homogeneous_weight);
        }
        rep.add("seed", seed);
        rep.print();
    });

    // ---- test / curve -------------------------------------------------------
    auto* test = app.add_subcommand("test", "detection probability of the sampling tester");
    std::string ts_graph, ts_family;
    int ts_q = 0;
    long long ts_trials = 0;
    test->add_option("--graph", ts_graph, "graph file")->required();
    test->add_option("--family", ts_family, "family file")->required();
    test->add_option("--q", ts_q, "sample size")->required();
    test->add_option("--trials", ts_trials, "trial count")->required();
    test->callback([&] {
        graph g = load_graph_file(ts_graph);
        graph_family f = load_family_file(ts_family);
        test_report r = detection_probability(g, f, ts_q, ts_trials, seed, threads, budget);
        report rep;
        rep.add("n", g.n);
        rep.add("q", r.sample_size);
        rep.add("trials", r.trials);
        rep.add("rejections", r.rejections);
        rep.add("frequency", r.frequency);
        rep.add("frequency_decimal", fixed9(r.frequency.to_double()));
        rep.add("wilson_low", fixed9(r.ci_low));
        rep.add("wilson_high", fixed9(r.ci_high));
        rep.add("lower_meets_two_thirds", r.lower_meets_two_thirds);
        rep.add("upper_reaches_two_thirds", r.upper_reaches_two_thirds);
        rep.add("seed", seed);
        rep.print();
    });

    auto* curve = app.add_subcommand("curve", "detection frequency over a sample-size grid");
    std::string cv_dir, cv_family, cv_grid;
    long long cv_trials = 0;
    curve->add_option("--instances", cv_dir, "directory of graph files")->required();
    curve->add_option("--family", cv_family, "family file")->required();
    curve->add_option("--q-grid", cv_grid, "comma-separated sample sizes")->required();
    curve->add_option("--trials", cv_trials, "trial count per grid point")->required();
    curve->callback([&] {
        std::error_code ec;
        if (!std::filesystem::is_directory(cv_dir, ec))
            fail(errc::parameter, "not a directory: " + cv_dir);
        std::vector<std::string> names;
        for (const auto& entry : std::filesystem::directory_iterator(cv_dir)) {
            if (!entry.is_regular_file()) continue;
            std::string name = entry.path().filename().string();
            if (name.size() > 10 && name.substr(name.size() - 10) == ".meta.json") continue;
            names.push_back(name);
        }
        std::sort(names.begin(), names.end());
        if (names.empty())
            fail(errc::parameter, "no instance files in " + cv_dir);
        std::vector<curve_instance> instances;
        for (const std::string& name : names) {
            std::string path = (std::filesystem::path(cv_dir) / name).string();
            instances.push_back({name, load_graph_file(path), sidecar_epsilon(path)});
        }
        graph_family f = load_family_file(cv_family);
        std::vector<curve_row> rows =
            tester_curve(instances, f, parse_grid_arg(cv_grid), cv_trials, seed, threads);
        report rep;
        for (const curve_row& row : rows) {
            rep.add("instance", row.label);
            rep.add("epsilon", row.epsilon);
            for (size_t i = 0; i < row.grid.size(); ++i)
                rep.add("q_" + std::to_string(row.grid[i]), row.frequency[i]);
            rep.add("q_star", row.q_star ? std::to_string(*row.q_star) : "censored");
        }
        rep.add("trials", cv_trials);
        rep.add("seed", seed);
        rep.print();
    });

    // ---- verify ----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "re-check a certificate sidecar against a graph");
    std::string vf_graph, vf_cert;
    verify->add_option("--graph", vf_graph, "graph file")->required();
    verify->add_option("--cert", vf_cert, "certificate file")->required();
    verify->callback([&] {
        graph g = load_graph_file(vf_graph);
        certificate_bundle b = load_certificate_file(vf_cert);
        verification_report r = verify_certificates(g, b);
        report rep;
        if (!b.instance_kind.empty())
            rep.add("instance_kind", b.instance_kind);
        if (r.vacuous)
            rep.add("warning", "empty certificate list, nothing to check");
        for (const verification_line& line : r.lines)
            rep.add("certificate " + line.label,
                    line.pass ? "pass" : "FAIL (" + line.detail + ")");
        rep.add("verdict", r.pass ? "pass" : "fail");
        rep.add("seed", seed);
        rep.print();
        if (!r.pass)
            rc = 1;
    });

    // global options (--seed, --threads, ...) may appear after the subcommand
    for (auto* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands(nullptr))
            nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        std::cerr << "run with --help for the synopsis\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error (" << errc_name(e.kind) << "): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
