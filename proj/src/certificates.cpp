#include "removal_lab/certificates.hpp"

#include <json.hpp>

#include "removal_lab/graph_io.hpp"

namespace rlab {

namespace {

const char* kind_token(certificate_kind k) {
    switch (k) {
        case certificate_kind::packing: return "packing";
        case certificate_kind::homomorphism: return "homomorphism";
        case certificate_kind::layout: return "layout";
        case certificate_kind::layered: return "layered";
    }
    return "unknown";
}

certificate_kind token_kind(const std::string& s) {
    if (s == "packing") return certificate_kind::packing;
    if (s == "homomorphism") return certificate_kind::homomorphism;
    if (s == "layout") return certificate_kind::layout;
    if (s == "layered") return certificate_kind::layered;
    fail(errc::format, "certificate file: unknown kind " + s);
}

nlohmann::json sets_json(const std::vector<vertex_set>& sets) {
    auto out = nlohmann::json::array();
    for (const auto& s : sets) out.push_back(s);
    return out;
}

std::vector<vertex_set> sets_from_json(const nlohmann::json& j) {
    std::vector<vertex_set> out;
    for (const auto& s : j) out.push_back(s.get<vertex_set>());
    return out;
}

certificate packing_certificate(std::string label, const packing& p) {
    certificate c;
    c.kind = certificate_kind::packing;
    c.label = std::move(label);
    c.pack = p;
    c.stated_size = (long long)p.copies.size();
    return c;
}

} // namespace

certificate_bundle instance_certificates(const hard_instance& inst) {
    certificate_bundle b;
    b.instance_kind = inst.kind;
    b.items.push_back(packing_certificate(inst.kind + "-packing", inst.pack));
    if (inst.kind == "thm4") {
        certificate layout;
        layout.kind = certificate_kind::layout;
        layout.label = "eight-part-layout";
        layout.parts = inst.parts;
        b.items.push_back(std::move(layout));
    }
    if (inst.hom) {
        certificate hom;
        hom.kind = certificate_kind::homomorphism;
        hom.label = "core-homomorphism";
        hom.target = inst.hom_target;
        hom.map = *inst.hom;
        b.items.push_back(std::move(hom));
    }
    return b;
}

certificate_bundle layered_certificates(const layered_clique_graph& r) {
    certificate_bundle b;
    b.instance_kind = "rs";
    certificate c;
    c.kind = certificate_kind::layered;
    c.label = "layer-cliques";
    c.parts = r.layers;
    c.cliques = r.cliques;
    b.items.push_back(std::move(c));
    return b;
}

std::string certificates_to_json(const certificate_bundle& b) {
    nlohmann::json j;
    j["schema"] = "removal-lab-certificates/1";
    if (!b.instance_kind.empty()) j["instance_kind"] = b.instance_kind;
    auto items = nlohmann::json::array();
    for (const certificate& c : b.items) {
        nlohmann::json e;
        e["kind"] = kind_token(c.kind);
        e["label"] = c.label;
        switch (c.kind) {
            case certificate_kind::packing: {
                e["pattern"] = to_graph6(c.pack->pattern);
                e["mode"] = c.pack->mode == copy_mode::induced ? "induced" : "subgraph";
                auto copies = nlohmann::json::array();
                for (const copy_record& r : c.pack->copies) copies.push_back(r.vertices);
                e["copies"] = std::move(copies);
                e["stated_size"] = c.stated_size;
                break;
            }
            case certificate_kind::homomorphism:
                e["target"] = to_graph6(c.target);
                e["assignment"] = c.map.assignment;
                break;
            case certificate_kind::layout:
                e["parts"] = sets_json(c.parts);
                break;
            case certificate_kind::layered:
                e["layers"] = sets_json(c.parts);
                e["cliques"] = sets_json(c.cliques);
                break;
        }
        items.push_back(std::move(e));
    }
    j["items"] = std::move(items);
    return j.dump(2) + "\n";
}

certificate_bundle parse_certificates(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::format, std::string("certificate file: ") + e.what());
    }
    if (!j.is_object() || j.value("schema", "") != "removal-lab-certificates/1")
        fail(errc::format, "certificate file: missing or unknown schema line");
    certificate_bundle b;
    b.instance_kind = j.value("instance_kind", "");
    if (!j.contains("items") || !j["items"].is_array())
        fail(errc::format, "certificate file: need an items array");
    try {
        for (const auto& e : j["items"]) {
            certificate c;
            c.kind = token_kind(e.at("kind").get<std::string>());
            c.label = e.value("label", "");
            switch (c.kind) {
                case certificate_kind::packing: {
                    packing p;
                    p.pattern = from_graph6(e.at("pattern").get<std::string>());
                    std::string mode = e.at("mode").get<std::string>();
                    if (mode != "induced" && mode != "subgraph")
                        fail(errc::format, "certificate file: unknown packing mode " + mode);
                    p.mode = mode == "induced" ? copy_mode::induced : copy_mode::subgraph;
                    for (const auto& r : e.at("copies"))
                        p.copies.push_back({r.get<std::vector<int>>()});
                    c.pack = std::move(p);
                    c.stated_size = e.at("stated_size").get<long long>();
                    break;
                }
                case certificate_kind::homomorphism:
                    c.target = from_graph6(e.at("target").get<std::string>());
                    c.map.assignment = e.at("assignment").get<std::vector<int>>();
                    break;
                case certificate_kind::layout:
                    c.parts = sets_from_json(e.at("parts"));
                    break;
                case certificate_kind::layered:
                    c.parts = sets_from_json(e.at("layers"));
                    c.cliques = sets_from_json(e.at("cliques"));
                    break;
            }
            b.items.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(errc::format, std::string("certificate file: ") + e.what());
    }
    return b;
}

certificate_bundle load_certificate_file(const std::string& path) {
    return parse_certificates(read_text_file(path));
}

namespace {

verification_line check_item(const graph& g, const certificate& c) {
    verification_line line;
    line.label = c.label.empty() ? kind_token(c.kind) : c.label;
    try {
        switch (c.kind) {
            case certificate_kind::packing: {
                verify_packing(g, *c.pack);
                if ((long long)c.pack->copies.size() < c.stated_size)
                    fail(errc::consistency,
                         "packing has " + std::to_string(c.pack->copies.size()) +
                             " copies, fewer than the stated " + std::to_string(c.stated_size));
                break;
            }
            case certificate_kind::homomorphism: {
                if ((int)c.map.assignment.size() != g.n)
                    fail(errc::consistency, "assignment length does not match the graph order");
                if (!verify_homomorphism(g, c.target, c.map))
                    fail(errc::consistency, "some edge does not land on a target edge");
                break;
            }
            case certificate_kind::layout: {
                if (!check_cycle8_layout(g, c.parts))
                    fail(errc::consistency, "eight-part layout hypothesis fails");
                break;
            }
            case certificate_kind::layered: {
                for (size_t i = 0; i < c.parts.size(); ++i) {
                    check_vertex_set(g, c.parts[i], "layer");
                    if (!is_independent(g, c.parts[i]))
                        fail(errc::consistency, "layer " + std::to_string(i) + " has an edge");
                }
                for (size_t i = 0; i < c.cliques.size(); ++i) {
                    check_vertex_set(g, c.cliques[i], "clique");
                    if (!is_clique(g, c.cliques[i]))
                        fail(errc::consistency,
                             "clique " + std::to_string(i) + " misses an edge");
                    for (size_t j = 0; j < i; ++j) {
                        int shared = 0;
                        for (int u : c.cliques[i])
                            for (int v : c.cliques[j])
                                if (u == v) ++shared;
                        if (shared > 1)
                            fail(errc::consistency, "cliques " + std::to_string(j) + " and " +
                                                        std::to_string(i) + " share an edge");
                    }
                }
                break;
            }
        }
        line.pass = true;
    } catch (const error& e) {
        line.pass = false;
        line.detail = e.what();
    }
    return line;
}

} // namespace

verification_report verify_certificates(const graph& g, const certificate_bundle& b) {
    verification_report rep;
    rep.vacuous = b.items.empty();
    for (const certificate& c : b.items) {
        rep.lines.push_back(check_item(g, c));
        if (!rep.lines.back().pass)
            rep.pass = false;
    }
    return rep;
}

} // namespace rlab
