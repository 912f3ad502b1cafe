#pragma once

#include <charconv>
#include <string>

namespace semisum {

/// Shortest round-trip decimal form of a double (locale-independent).
inline std::string fmt_full(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

/// Fixed significant-digit form (locale-independent, general format).
inline std::string fmt_sig(double v, int digits) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
    return std::string(buf, ptr);
}

} // namespace semisum
