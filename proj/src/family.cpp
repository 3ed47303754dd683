#include "removal_lab/family.hpp"

#include <json.hpp>

#include "removal_lab/graph_io.hpp"

namespace rlab {

std::optional<std::vector<int>> find_cycle_subgraph(const graph& g, int len,
                                                    unsigned long long node_budget) {
    if (len < 3) fail(errc::parameter, "cycle length below 3");
    if (len > g.n) return std::nullopt;
    unsigned long long nodes = 0;
    std::vector<int> path;
    std::vector<uint8_t> used(g.n, 0);
    std::optional<std::vector<int>> found;
    // anchor the start at the minimum vertex of the cycle and orient by
    // second < last so each cycle is visited once
    auto dfs = [&](auto&& self, int at) -> bool {
        if (at == len) {
            if (g.has_edge(path.back(), path[0]) && path[1] < path.back()) {
                found = path;
                return false;
            }
            return true;
        }
        for (int v = path[0] + 1; v < g.n; ++v) {
            if (used[v]) continue;
            if (++nodes > node_budget) fail(errc::scale, "cycle search exceeded node budget");
            if (!g.has_edge(path[at - 1], v)) continue;
            path.push_back(v);
            used[v] = 1;
            bool keep_going = self(self, at + 1);
            used[v] = 0;
            path.pop_back();
            if (!keep_going) return false;
        }
        return true;
    };
    for (int start = 0; start < g.n && !found; ++start) {
        path.assign(1, start);
        used[start] = 1;
        dfs(dfs, 1);
        used[start] = 0;
    }
    return found;
}

std::optional<family_witness> find_family_witness(const graph& g, const graph_family& f,
                                                  unsigned long long node_budget) {
    for (size_t i = 0; i < f.members.size(); ++i) {
        if (f.members[i].n > g.n) continue;
        if (auto c = find_induced_copy(g, f.members[i], node_budget))
            return family_witness{true, i, c->vertices};
    }
    for (size_t i = 0; i < f.subgraph_cycles.size(); ++i) {
        long long len = f.subgraph_cycles[i];
        if (len > g.n) continue;
        if (auto c = find_cycle_subgraph(g, (int)len, node_budget))
            return family_witness{false, i, *c};
    }
    return std::nullopt;
}

graph_family parse_family(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::format, std::string("family file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("members")) fail(errc::format, "family file: need members");
    graph_family f;
    for (const auto& m : j["members"]) {
        if (m.is_string())
            f.members.push_back(from_graph6(m.get<std::string>()));
        else
            f.members.push_back(from_edge_json(m.dump()));
    }
    if (j.contains("subgraph_cycles"))
        for (const auto& c : j["subgraph_cycles"]) {
            long long len = c.get<long long>();
            if (len < 3) fail(errc::format, "family file: cycle length below 3");
            f.subgraph_cycles.push_back(len);
        }
    if (j.contains("symbolic_cycles"))
        for (const auto& c : j["symbolic_cycles"]) f.symbolic_cycles.push_back(c.get<std::string>());
    if (f.members.empty() && f.subgraph_cycles.empty())
        fail(errc::format, "family file: no matchable members");
    return f;
}

std::string family_to_json(const graph_family& f) {
    nlohmann::json j;
    auto ms = nlohmann::json::array();
    for (const auto& g : f.members) ms.push_back(to_graph6(g));
    j["members"] = std::move(ms);
    if (!f.subgraph_cycles.empty()) j["subgraph_cycles"] = f.subgraph_cycles;
    if (!f.symbolic_cycles.empty()) j["symbolic_cycles"] = f.symbolic_cycles;
    return j.dump();
}

graph_family load_family_file(const std::string& path) {
    return parse_family(read_text_file(path));
}

} // namespace rlab
