#pragma once

#include <cstdint>
#include <string>

namespace cop {

/// Shortest round-trip decimal rendering of a double (std::to_chars).
/// Infinities serialize as the literal tokens "inf" / "-inf".
std::string format_double(double value);

std::string format_int(std::int64_t value);

} // namespace cop
