#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rmf {

using int128 = __int128;
using uint128 = unsigned __int128;

inline std::string to_string(int128 v) {
    if (v == 0) return "0";
    const bool negative = v < 0;
    uint128 u = negative ? -static_cast<uint128>(v) : static_cast<uint128>(v);
    std::string digits;
    while (u > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (negative) digits.push_back('-');
    return {digits.rbegin(), digits.rend()};
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 result;
    if (__builtin_mul_overflow(a, b, &result)) {
        throw std::overflow_error("128-bit multiplication overflow");
    }
    return result;
}

inline int128 checked_add(int128 a, int128 b) {
    int128 result;
    if (__builtin_add_overflow(a, b, &result)) {
        throw std::overflow_error("128-bit addition overflow");
    }
    return result;
}

inline int128 gcd128(int128 a, int128 b) noexcept {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const int128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

}  // namespace rmf
