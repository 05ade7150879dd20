#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace psl {

using u128 = unsigned __int128;

inline constexpr u128 kU127Max = (static_cast<u128>(1) << 127) - 1;

/// Decimal rendering; the standard library has no formatter for __int128.
std::string to_string(u128 value);

/// Parses a non-empty string of decimal digits. Throws psl::invalid_argument on
/// malformed input or overflow.
u128 parse_u128(std::string_view text);

inline double to_double(u128 value) { return static_cast<double>(value); }

struct u128_dec {
    u128 value;
};

inline std::ostream& operator<<(std::ostream& os, u128_dec v) { return os << to_string(v.value); }

}  // namespace psl
