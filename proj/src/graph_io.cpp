#include "removal_lab/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rlab {

namespace {

void append_n(std::string& out, long long n) {
    if (n < 0) fail(errc::parameter, "graph6: negative order");
    if (n <= 62) {
        out += char(n + 63);
    } else if (n <= 258047) {
        out += char(126);
        for (int shift = 12; shift >= 0; shift -= 6) out += char(((n >> shift) & 63) + 63);
    } else if (n <= 68719476735ll) {
        out += char(126);
        out += char(126);
        for (int shift = 30; shift >= 0; shift -= 6) out += char(((n >> shift) & 63) + 63);
    } else {
        fail(errc::scale, "graph6: order too large");
    }
}

long long parse_n(const std::string& s, size_t& at) {
    auto byte = [&](size_t i) -> long long {
        if (i >= s.size()) fail(errc::format, "graph6: truncated header");
        long long c = (unsigned char)s[i];
        if (c < 63 || c > 126) fail(errc::format, "graph6: byte out of range");
        return c - 63;
    };
    if (byte(at) != 63) return byte(at++);
    ++at;
    if (byte(at) != 63) {
        long long n = 0;
        for (int i = 0; i < 3; ++i) n = (n << 6) | byte(at++);
        return n;
    }
    ++at;
    long long n = 0;
    for (int i = 0; i < 6; ++i) n = (n << 6) | byte(at++);
    return n;
}

} // namespace

std::string to_graph6(const graph& g) {
    std::string out;
    append_n(out, g.n);
    int acc = 0, nbits = 0;
    for (int v = 1; v < g.n; ++v)
        for (int u = 0; u < v; ++u) {
            acc = (acc << 1) | int(g.has_edge(u, v));
            if (++nbits == 6) {
                out += char(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    if (nbits) out += char((acc << (6 - nbits)) + 63);
    return out;
}

graph from_graph6(const std::string& s) {
    size_t at = 0;
    long long n = parse_n(s, at);
    if (n > 1000000) fail(errc::scale, "graph6: order too large to load");
    graph g((int)n);
    long long pairs = n * (n - 1) / 2;
    long long expect_bytes = (pairs + 5) / 6;
    if ((long long)(s.size() - at) != expect_bytes) fail(errc::format, "graph6: bad body length");
    int v = 1, u = 0;
    for (long long b = 0; b < expect_bytes; ++b) {
        int c = (unsigned char)s[at + b];
        if (c < 63 || c > 126) fail(errc::format, "graph6: byte out of range");
        c -= 63;
        for (int bit = 5; bit >= 0 && v < n; --bit) {
            if ((c >> bit) & 1) g.add_edge(u, v);
            if (++u == v) { ++v; u = 0; }
        }
    }
    return g;
}

std::string to_edge_json(const graph& g) {
    nlohmann::json j;
    j["n"] = g.n;
    auto arr = nlohmann::json::array();
    for (auto [u, v] : g.edges()) arr.push_back({u, v});
    j["edges"] = std::move(arr);
    return j.dump();
}

graph from_edge_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::format, std::string("edge record: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        fail(errc::format, "edge record: need object with n and edges");
    int n = j["n"].get<int>();
    if (n < 0) fail(errc::format, "edge record: negative n");
    graph g(n);
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) fail(errc::format, "edge record: edge must be a pair");
        int u = e[0].get<int>(), v = e[1].get<int>();
        if (u >= v) fail(errc::format, "edge record: edges must satisfy u < v");
        if (v >= n || u < 0) fail(errc::format, "edge record: endpoint out of range");
        if (g.has_edge(u, v)) fail(errc::format, "edge record: duplicate edge");
        g.add_edge(u, v);
    }
    return g;
}

graph parse_graph(const std::string& text) {
    size_t i = text.find_first_not_of(" \t\r\n");
    if (i == std::string::npos) fail(errc::format, "empty graph text");
    // graph6 encodes n in {60,61,62} as '{','|','}', so a leading brace alone
    // does not mean JSON; quoted keys do, and '"' is outside the graph6 alphabet
    if (text[i] == '{' && text.find('"') != std::string::npos) return from_edge_json(text);
    size_t end = text.find_first_of("\r\n", i);
    std::string line = text.substr(i, end == std::string::npos ? std::string::npos : end - i);
    return from_graph6(line);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::format, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::format, "cannot write " + path);
    out << text;
}

graph load_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

void save_graph_file(const std::string& path, const graph& g, graph_format fmt) {
    write_text_file(path, (fmt == graph_format::graph6 ? to_graph6(g) : to_edge_json(g)) + "\n");
}

} // namespace rlab
