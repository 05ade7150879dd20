#include "psl/int128.hpp"

#include <algorithm>

#include "psl/error.hpp"

namespace psl {

std::string to_string(u128 value) {
    if (value == 0) {
        return "0";
    }
    std::string out;
    while (value != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

u128 parse_u128(std::string_view text) {
    if (text.empty()) {
        throw invalid_argument("empty integer literal");
    }
    constexpr u128 kMax = ~static_cast<u128>(0);
    u128 value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw invalid_argument("not a decimal integer: '" + std::string(text) + "'");
        }
        const auto digit = static_cast<unsigned>(c - '0');
        if (value > (kMax - digit) / 10) {
            throw invalid_argument("integer does not fit in 128 bits: '" + std::string(text) + "'");
        }
        value = value * 10 + digit;
    }
    return value;
}

}  // namespace psl
