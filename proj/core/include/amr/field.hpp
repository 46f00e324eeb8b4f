#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "amr/errors.hpp"

namespace amr {

using Bytes = std::vector<uint8_t>;

/// Ambient prime field. The modulus is process-wide, configured once before
/// any element is created (defaults to the BN254 scalar-field prime).
/// Elements are stored in Montgomery form; the canonical external encoding
/// is the 32-byte big-endian integer in [0, P).
class FieldElement {
  public:
    struct Params {
        std::array<uint64_t, 4> modulus;   // little-endian limbs
        std::array<uint64_t, 4> r2;        // (2^256)^2 mod P
        std::array<uint64_t, 4> r1;        // 2^256 mod P (Montgomery one)
        uint64_t inv;                      // -P^{-1} mod 2^64
        unsigned bits;                     // bit length of P

        static Params derive(const std::array<uint64_t, 4>& modulus);
    };

    // Zero element.
    FieldElement() : mont_{0, 0, 0, 0} {}

    static FieldElement zero() { return FieldElement(); }
    static FieldElement one();
    static FieldElement from_u64(uint64_t v);
    // Reduces an arbitrary 256-bit big-endian integer mod P.
    static FieldElement from_bytes_reduce(const uint8_t* data, size_t len);
    // Strict canonical decode: exactly 32 bytes, value < P.
    static FieldElement from_bytes(const uint8_t* data, size_t len);
    static FieldElement from_bytes(const Bytes& b) { return from_bytes(b.data(), b.size()); }
    static FieldElement from_hex(const std::string& hex);

    FieldElement add(const FieldElement& o) const;
    FieldElement sub(const FieldElement& o) const;
    FieldElement mul(const FieldElement& o) const;
    FieldElement neg() const;
    // Multiplicative inverse; signals DivisionByZero on the zero element.
    FieldElement inv() const;
    FieldElement pow(uint64_t e) const;

    bool is_zero() const { return mont_ == std::array<uint64_t, 4>{0, 0, 0, 0}; }

    // Canonical (non-Montgomery) limbs, little-endian.
    std::array<uint64_t, 4> canonical() const;
    std::array<uint8_t, 32> to_bytes() const; // big-endian, fixed width
    std::string to_hex() const;               // 64 lowercase hex chars

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) { return a.add(b); }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a.sub(b); }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) { return a.mul(b); }
    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.mont_ == b.mont_; }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
    // Order over canonical values, usable as a map key.
    friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
        auto ca = a.canonical(), cb = b.canonical();
        for (int i = 3; i >= 0; --i) {
            if (ca[i] != cb[i]) return ca[i] < cb[i] ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    static const Params& params();
    // Must be called before any element exists; rejects non-odd moduli.
    static void set_modulus(const std::array<uint64_t, 4>& modulus_le);
    static std::string modulus_hex();

  private:
    std::array<uint64_t, 4> mont_;
};

namespace fe {
// Free-function spelling used throughout the protocol code.
inline FieldElement add(const FieldElement& a, const FieldElement& b) { return a.add(b); }
inline FieldElement sub(const FieldElement& a, const FieldElement& b) { return a.sub(b); }
inline FieldElement mul(const FieldElement& a, const FieldElement& b) { return a.mul(b); }
inline FieldElement inv(const FieldElement& a) { return a.inv(); }
} // namespace fe

} // namespace amr
