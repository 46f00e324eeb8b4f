#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "amr/errors.hpp"

namespace amr {

using u128 = unsigned __int128;

std::string u128_to_string(u128 v);
/// floor(a * b / den) with a 256-bit intermediate; den must be nonzero.
u128 mul_div_floor(u128 a, u128 b, u128 den);

/// Coin/token/rate quantity: fixed point with 18 decimal places, stored as
/// raw integer units. All payout arithmetic floors; remainders stay with the
/// paying pool, which keeps conservation audits exact.
struct Amount {
    static constexpr uint64_t kScale = 1000000000000000000ull; // 1e18

    u128 raw = 0;

    static Amount from_raw(u128 raw) { return Amount{raw}; }
    static Amount from_coins(uint64_t whole) { return Amount{(u128)whole * kScale}; }
    /// Parses a non-negative decimal literal like "10", "0.02", "1.000001".
    static Amount parse(const std::string& text); // throws ConfigError

    bool is_zero() const { return raw == 0; }
    std::string to_string() const;

    friend Amount operator+(Amount a, Amount b) { return Amount{a.raw + b.raw}; }
    friend Amount operator-(Amount a, Amount b) {
        if (a.raw < b.raw) throw Error(Err::InsufficientBalance, "amount underflow");
        return Amount{a.raw - b.raw};
    }
    friend auto operator<=>(const Amount& a, const Amount& b) {
        return a.raw < b.raw   ? std::strong_ordering::less
               : a.raw > b.raw ? std::strong_ordering::greater
                               : std::strong_ordering::equal;
    }
    friend bool operator==(const Amount&, const Amount&) = default;
};

} // namespace amr
