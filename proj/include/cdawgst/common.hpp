#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace cdawgst {

// Character codes: 0 is the terminal, letters are dense in [1..sigma].
using symbol_t = std::uint32_t;
// Text positions, ranks and lengths. All public positions are 1-based.
using pos_t = std::uint64_t;
using node_t = std::uint32_t;

inline constexpr node_t kNoNode = std::numeric_limits<node_t>::max();

enum class Mode : std::uint8_t {
    full = 0,  // RLBWT, BWT intervals in identifiers, Weiner arcs
    lite = 1,  // O(e_T) words: no RLBWT, no intervals, no Weiner arcs
};

inline const char* to_string(Mode m) { return m == Mode::full ? "full" : "lite"; }

struct Interval {
    pos_t lo = 0;
    pos_t hi = 0;

    pos_t width() const { return hi - lo + 1; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

// Raised when an operation needs data that the lite representation drops.
class unsupported_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Raised on malformed or corrupted serialized data.
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cdawgst
