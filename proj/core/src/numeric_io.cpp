#include "traj_manifold/numeric_io.hpp"

#include "traj_manifold/errors.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace traj_manifold {

std::string format_double(double value) {
    if (value == 0.0) {
        return "0"; // collapses -0 as well
    }
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                   std::chars_format::general, 17);
    if (ec != std::errc{}) {
        throw NumericalError("failed to format floating-point value");
    }
    return std::string(buffer, ptr);
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw ValidationError("not a real number: '" + std::string(text) + "'");
    }
    return value;
}

long long parse_integer(std::string_view text) {
    long long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw ValidationError("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

} // namespace traj_manifold
