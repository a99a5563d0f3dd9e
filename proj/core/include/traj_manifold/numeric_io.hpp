#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace traj_manifold {

/// Formats a double with 17 significant digits (general format), enough for
/// an exact text round trip. Negative zero is normalized to "0".
std::string format_double(double value);

/// Locale-independent strict parse of a double. The whole string must be
/// consumed. Throws ValidationError on failure.
double parse_double(std::string_view text);

/// Strict parse of a base-10 integer. Throws ValidationError on failure.
long long parse_integer(std::string_view text);

/// FNV-1a 64-bit hash, used for input checksums in run manifests.
std::uint64_t fnv1a64(std::string_view bytes);

} // namespace traj_manifold
