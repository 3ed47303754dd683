#pragma once

#include <optional>
#include <string>
#include <vector>

#include "removal_lab/construct.hpp"
#include "removal_lab/count.hpp"
#include "removal_lab/graph.hpp"
#include "removal_lab/homomorphism.hpp"

namespace rlab {

// Sidecar certificates: everything a third party needs to re-check an
// instance's claims against the graph file alone, with no trust in the
// generator.  One bundle holds the independent claims for one graph.
enum class certificate_kind { packing, homomorphism, layout, layered };

struct certificate {
    certificate_kind kind = certificate_kind::packing;
    std::string label;

    // packing: pattern copies in the host, pairwise sharing at most one
    // vertex, at least stated_size of them
    std::optional<packing> pack;
    long long stated_size = 0;

    // homomorphism: host -> target, edges land on edges
    graph target;
    hom_map map;

    // layout: the eight-part overlay hypothesis on these parts
    // layered: independent layers plus pairwise edge-disjoint cliques
    std::vector<vertex_set> parts;
    std::vector<vertex_set> cliques;
};

struct certificate_bundle {
    std::string instance_kind;   // generator tag, echoed for reports; may be empty
    std::vector<certificate> items;
};

// claims shipped by the instance generators
certificate_bundle instance_certificates(const hard_instance& inst);
certificate_bundle layered_certificates(const layered_clique_graph& r);

std::string certificates_to_json(const certificate_bundle& b);
certificate_bundle parse_certificates(const std::string& text);
certificate_bundle load_certificate_file(const std::string& path);

struct verification_line {
    std::string label;
    bool pass = false;
    std::string detail;   // failure reason, empty on pass
};

struct verification_report {
    bool pass = true;
    bool vacuous = false;   // no items to check
    std::vector<verification_line> lines;
};

// Re-validates every item from scratch against g: packing disjointness and
// per-copy validity plus the stated size, homomorphism edge preservation,
// layout hypotheses, layer independence and clique edge-disjointness.
verification_report verify_certificates(const graph& g, const certificate_bundle& b);

} // namespace rlab
