#include "amr/field.hpp"

#include <cstring>

namespace amr {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;
using Limbs = std::array<u64, 4>;

// BN254 / alt_bn128 scalar-field prime,
// 0x30644e72e131a029b85045b68181585d2833e84879b9709143e1f593f0000001.
constexpr Limbs kBn254Modulus = {0x43e1f593f0000001ull, 0x2833e84879b97091ull,
                                 0xb85045b68181585dull, 0x30644e72e131a029ull};

int cmp(const Limbs& a, const Limbs& b) {
    for (int i = 3; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

// a - b, wrapping mod 2^256; returns the final borrow.
u64 sub_limbs(Limbs& a, const Limbs& b) {
    u64 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        u128 d = (u128)a[i] - b[i] - borrow;
        a[i] = (u64)d;
        borrow = (d >> 64) ? 1 : 0;
    }
    return borrow;
}

u64 add_limbs(Limbs& a, const Limbs& b) {
    u64 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 s = (u128)a[i] + b[i] + carry;
        a[i] = (u64)s;
        carry = (u64)(s >> 64);
    }
    return carry;
}

void reduce_in_place(Limbs& a, const Limbs& p, u64 overflow) {
    if (overflow || cmp(a, p) >= 0) sub_limbs(a, p);
}

// CIOS Montgomery multiplication: returns a*b*2^-256 mod P.
Limbs mont_mul(const Limbs& a, const Limbs& b, const FieldElement::Params& p) {
    u64 t[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        u128 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 cur = (u128)a[j] * b[i] + t[j] + carry;
            t[j] = (u64)cur;
            carry = cur >> 64;
        }
        u128 cur = (u128)t[4] + carry;
        t[4] = (u64)cur;
        t[5] = (u64)(cur >> 64);

        u64 m = t[0] * p.inv;
        carry = ((u128)m * p.modulus[0] + t[0]) >> 64;
        for (int j = 1; j < 4; ++j) {
            cur = (u128)m * p.modulus[j] + t[j] + carry;
            t[j - 1] = (u64)cur;
            carry = cur >> 64;
        }
        cur = (u128)t[4] + carry;
        t[3] = (u64)cur;
        t[4] = t[5] + (u64)(cur >> 64);
        t[5] = 0;
    }
    Limbs r = {t[0], t[1], t[2], t[3]};
    reduce_in_place(r, p.modulus, t[4]);
    return r;
}

Limbs double_mod(Limbs a, const Limbs& p) {
    u64 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u64 next = a[i] >> 63;
        a[i] = (a[i] << 1) | carry;
        carry = next;
    }
    reduce_in_place(a, p, carry);
    return a;
}

FieldElement::Params& mutable_params() {
    static FieldElement::Params p = FieldElement::Params::derive(kBn254Modulus);
    return p;
}

Limbs pow_limbs(const Limbs& base_mont, const Limbs& exponent, const FieldElement::Params& p) {
    Limbs result = p.r1; // Montgomery one
    Limbs acc = base_mont;
    for (int limb = 0; limb < 4; ++limb) {
        for (int bit = 0; bit < 64; ++bit) {
            if ((exponent[limb] >> bit) & 1) result = mont_mul(result, acc, p);
            acc = mont_mul(acc, acc, p);
        }
    }
    return result;
}

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

FieldElement::Params FieldElement::Params::derive(const Limbs& modulus) {
    if (!(modulus[0] & 1)) throw Error(Err::BadConfig, "field modulus must be odd");
    Params p;
    p.modulus = modulus;

    // -P^{-1} mod 2^64 by Newton iteration.
    u64 inv = 1;
    for (int i = 0; i < 6; ++i) inv *= 2 - modulus[0] * inv;
    p.inv = ~inv + 1;

    // 2^256 mod P by repeated doubling from 1.
    Limbs r = {1, 0, 0, 0};
    for (int i = 0; i < 256; ++i) r = double_mod(r, modulus);
    p.r1 = r;
    for (int i = 0; i < 256; ++i) r = double_mod(r, modulus);
    p.r2 = r;

    p.bits = 0;
    for (int i = 3; i >= 0; --i) {
        if (modulus[i]) {
            p.bits = i * 64 + (64 - __builtin_clzll(modulus[i]));
            break;
        }
    }
    return p;
}

const FieldElement::Params& FieldElement::params() { return mutable_params(); }

void FieldElement::set_modulus(const Limbs& modulus_le) {
    mutable_params() = Params::derive(modulus_le);
}

std::string FieldElement::modulus_hex() {
    const auto& m = params().modulus;
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (int i = 3; i >= 0; --i) {
        for (int s = 60; s >= 0; s -= 4) out.push_back(digits[(m[i] >> s) & 0xf]);
    }
    return out;
}

FieldElement FieldElement::one() {
    FieldElement x;
    x.mont_ = params().r1;
    return x;
}

FieldElement FieldElement::from_u64(uint64_t v) {
    FieldElement x;
    x.mont_ = mont_mul({v, 0, 0, 0}, params().r2, params());
    return x;
}

FieldElement FieldElement::from_bytes_reduce(const uint8_t* data, size_t len) {
    if (len > 32) throw Error(Err::ConfigError, "field reduce input longer than 32 bytes");
    Limbs v = {0, 0, 0, 0};
    for (size_t i = 0; i < len; ++i) {
        size_t pos = len - 1 - i; // big-endian input
        v[i / 8] |= (u64)data[pos] << (8 * (i % 8));
    }
    const auto& p = params();
    while (cmp(v, p.modulus) >= 0) sub_limbs(v, p.modulus);
    FieldElement x;
    x.mont_ = mont_mul(v, p.r2, p);
    return x;
}

FieldElement FieldElement::from_bytes(const uint8_t* data, size_t len) {
    if (len != 32) throw Error(Err::ConfigError, "canonical field encoding is 32 bytes");
    Limbs v = {0, 0, 0, 0};
    for (size_t i = 0; i < 32; ++i) v[(31 - i) / 8] |= (u64)data[i] << (8 * ((31 - i) % 8));
    const auto& p = params();
    if (cmp(v, p.modulus) >= 0) throw Error(Err::ConfigError, "field encoding not below modulus");
    FieldElement x;
    x.mont_ = mont_mul(v, p.r2, p);
    return x;
}

FieldElement FieldElement::from_hex(const std::string& hex) {
    std::string h = hex;
    if (h.rfind("0x", 0) == 0) h = h.substr(2);
    if (h.empty() || h.size() > 64) throw Error(Err::ConfigError, "bad field hex length");
    std::array<uint8_t, 32> buf{};
    size_t off = 64 - h.size();
    for (size_t i = 0; i < h.size(); ++i) {
        int n = hex_nibble(h[i]);
        if (n < 0) throw Error(Err::ConfigError, "bad hex digit in field literal");
        size_t pos = off + i;
        buf[pos / 2] |= (uint8_t)(n << (pos % 2 ? 0 : 4));
    }
    Limbs v = {0, 0, 0, 0};
    for (size_t i = 0; i < 32; ++i) v[(31 - i) / 8] |= (u64)buf[i] << (8 * ((31 - i) % 8));
    const auto& p = params();
    if (cmp(v, p.modulus) >= 0) throw Error(Err::ConfigError, "field literal not below modulus");
    FieldElement x;
    x.mont_ = mont_mul(v, p.r2, p);
    return x;
}

FieldElement FieldElement::add(const FieldElement& o) const {
    FieldElement r = *this;
    u64 carry = add_limbs(r.mont_, o.mont_);
    reduce_in_place(r.mont_, params().modulus, carry);
    return r;
}

FieldElement FieldElement::sub(const FieldElement& o) const {
    FieldElement r = *this;
    if (sub_limbs(r.mont_, o.mont_)) add_limbs(r.mont_, params().modulus);
    return r;
}

FieldElement FieldElement::mul(const FieldElement& o) const {
    FieldElement r;
    r.mont_ = mont_mul(mont_, o.mont_, params());
    return r;
}

FieldElement FieldElement::neg() const { return FieldElement().sub(*this); }

FieldElement FieldElement::inv() const {
    if (is_zero()) throw Error(Err::DivisionByZero, "inverse of zero");
    // x^(P-2); P is prime.
    Limbs e = params().modulus;
    e[0] -= 2; // P is odd and > 2, no borrow
    FieldElement r;
    r.mont_ = pow_limbs(mont_, e, params());
    return r;
}

FieldElement FieldElement::pow(uint64_t e) const {
    FieldElement r;
    r.mont_ = pow_limbs(mont_, {e, 0, 0, 0}, params());
    return r;
}

std::array<uint64_t, 4> FieldElement::canonical() const {
    return mont_mul(mont_, {1, 0, 0, 0}, params());
}

std::array<uint8_t, 32> FieldElement::to_bytes() const {
    Limbs v = canonical();
    std::array<uint8_t, 32> out{};
    for (size_t i = 0; i < 32; ++i) out[i] = (uint8_t)(v[(31 - i) / 8] >> (8 * ((31 - i) % 8)));
    return out;
}

std::string FieldElement::to_hex() const {
    auto b = to_bytes();
    static const char* digits = "0123456789abcdef";
    std::string out(64, '0');
    for (size_t i = 0; i < 32; ++i) {
        out[2 * i] = digits[b[i] >> 4];
        out[2 * i + 1] = digits[b[i] & 0xf];
    }
    return out;
}

const char* err_name(Err e) {
    switch (e) {
        case Err::DivisionByZero: return "DivisionByZero";
        case Err::MalformedNote: return "MalformedNote";
        case Err::BadConfig: return "BadConfig";
        case Err::BadIndex: return "BadIndex";
        case Err::MalformedPath: return "MalformedPath";
        case Err::UnsatisfiedRelation: return "UnsatisfiedRelation";
        case Err::BadSignature: return "BadSignature";
        case Err::InsufficientBalance: return "InsufficientBalance";
        case Err::InsufficientShares: return "InsufficientShares";
        case Err::ZeroAmount: return "ZeroAmount";
        case Err::WrongDenomination: return "WrongDenomination";
        case Err::TreeFull: return "TreeFull";
        case Err::StaleRoot: return "StaleRoot";
        case Err::DoubleSpend: return "DoubleSpend";
        case Err::BadProof: return "BadProof";
        case Err::WrongRewardRoot: return "WrongRewardRoot";
        case Err::InsufficientTokens: return "InsufficientTokens";
        case Err::BadDuration: return "BadDuration";
        case Err::NoLock: return "NoLock";
        case Err::ZeroTotalWeight: return "ZeroTotalWeight";
        case Err::NoteNotFound: return "NoteNotFound";
        case Err::NoteTooYoung: return "NoteTooYoung";
        case Err::EmptyAnonSet: return "EmptyAnonSet";
        case Err::HeightUnderflow: return "HeightUnderflow";
        case Err::UnsortedTrace: return "UnsortedTrace";
        case Err::ConfigError: return "ConfigError";
        case Err::AuditFailure: return "AuditFailure";
    }
    return "UnknownError";
}

} // namespace amr
