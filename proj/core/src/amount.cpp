#include "amr/amount.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace amr {

namespace {
using boost::multiprecision::uint256_t;

uint256_t widen(u128 v) {
    return (uint256_t(uint64_t(v >> 64)) << 64) | uint64_t(v);
}
} // namespace

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v) {
        out.insert(out.begin(), char('0' + (int)(v % 10)));
        v /= 10;
    }
    return out;
}

u128 mul_div_floor(u128 a, u128 b, u128 den) {
    if (den == 0) throw Error(Err::DivisionByZero, "mul_div_floor by zero");
    uint256_t q = widen(a) * widen(b) / widen(den);
    if (q >> 128) throw Error(Err::ConfigError, "amount overflow in mul_div_floor");
    return ((u128)(uint64_t)(q >> 64) << 64) | (uint64_t)q;
}

Amount Amount::parse(const std::string& text) {
    if (text.empty()) throw Error(Err::ConfigError, "empty amount literal");
    size_t dot = text.find('.');
    std::string whole = dot == std::string::npos ? text : text.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw Error(Err::ConfigError, "bad amount literal");
    if (frac.size() > 18)
        throw Error(Err::ConfigError, "amount literal has more than 18 decimal places");
    u128 value = 0;
    for (char c : whole) {
        if (c < '0' || c > '9') throw Error(Err::ConfigError, "bad digit in amount literal");
        u128 next = value * 10 + (c - '0');
        if (next / 10 != value) throw Error(Err::ConfigError, "amount literal overflow");
        value = next;
    }
    u128 raw = value * kScale;
    if (value != 0 && raw / kScale != value) throw Error(Err::ConfigError, "amount literal overflow");
    u128 frac_units = 0;
    for (char c : frac) {
        if (c < '0' || c > '9') throw Error(Err::ConfigError, "bad digit in amount literal");
        frac_units = frac_units * 10 + (c - '0');
    }
    for (size_t i = frac.size(); i < 18; ++i) frac_units *= 10;
    return Amount{raw + frac_units};
}

std::string Amount::to_string() const {
    u128 whole = raw / kScale;
    u128 frac = raw % kScale;
    std::string out = u128_to_string(whole);
    if (frac) {
        std::string digits = u128_to_string(frac);
        digits.insert(digits.begin(), 18 - digits.size(), '0');
        while (!digits.empty() && digits.back() == '0') digits.pop_back();
        out += "." + digits;
    }
    return out;
}

} // namespace amr
