#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

// Every failure surfaced by the library carries one of these kinds so the CLI
// can map it to an exit code without string-matching messages.
enum class errc {
    parameter,    // caller passed something out of range / malformed
    degenerate,   // construction parameters lead to an empty or useless object
    scale,        // input exceeds an enumeration or backtracking budget
    condition,    // a stated precondition fails on the actual input
    consistency,  // an internal cross-check failed; indicates a real bug or a violated hypothesis
    format,       // unparsable file or unknown serialization
};

struct error : std::runtime_error {
    errc kind;
    error(errc k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(errc k, const std::string& msg) { throw error(k, msg); }

inline const char* errc_name(errc k) {
    switch (k) {
        case errc::parameter: return "parameter";
        case errc::degenerate: return "degenerate";
        case errc::scale: return "scale";
        case errc::condition: return "condition";
        case errc::consistency: return "consistency";
        case errc::format: return "format";
    }
    return "unknown";
}

} // namespace rlab
