#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "amr/field.hpp"

namespace amr {

enum class HashKind { MiMC, Poseidon };

const char* hash_kind_name(HashKind kind);
HashKind hash_kind_from_name(const std::string& name); // throws ConfigError

/// Round parameters for one permutation family. Two engines derive identical
/// parameters from the same seed strings, so digests agree across builds.
struct PermutationParams {
    HashKind kind = HashKind::MiMC;
    unsigned round_count = 0;   // MiMC: Feistel rounds; Poseidon: full + partial
    unsigned sbox_exponent = 0; // 7 for MiMC, 5 for Poseidon
    std::vector<FieldElement> round_constants;

    // Poseidon only.
    unsigned width = 0;
    unsigned full_rounds = 0;
    unsigned partial_rounds = 0;
    std::vector<std::vector<FieldElement>> mds;

    /// Deterministic derivation: constant i is SHA-256("AMR-<kind>-rc-<i>")
    /// reduced mod P; the Poseidon MDS is the Cauchy matrix 1/(i + j + width).
    static PermutationParams derive(HashKind kind);
    /// Process-wide params for a kind (derived once, immutable).
    static const PermutationParams& standard(HashKind kind);
};

// Single-byte domain tags prepended to h_p inputs. Distinct first bytes keep
// the images of the tagged hash uses disjoint.
namespace domain {
inline constexpr uint8_t kCommit = 0x01;
inline constexpr uint8_t kNullifier = 0x02;
inline constexpr uint8_t kPubKey = 0x03;
inline constexpr uint8_t kProof = 0x04;
inline constexpr uint8_t kSig = 0x05;
inline constexpr uint8_t kTx = 0x06;
} // namespace domain

/// 2-to-1 field compression.
FieldElement h_2p(HashKind kind, const FieldElement& left, const FieldElement& right);
FieldElement h_2p(const PermutationParams& params, const FieldElement& left,
                  const FieldElement& right);

/// Arbitrary-bytes-to-field hash: rate-1 sponge over h_2p. Input is padded
/// with 0x01 then zeros to a 31-byte boundary and absorbed in big-endian
/// 31-byte chunks.
FieldElement h_p(HashKind kind, const uint8_t* data, size_t len);
FieldElement h_p(HashKind kind, const Bytes& data);

/// Deposit commitment cm = h_p(kCommit || k || r); k and r must be 32 bytes.
FieldElement commit(HashKind kind, const Bytes& k, const Bytes& r);
bool verify_commit(HashKind kind, const FieldElement& cm, const Bytes& k, const Bytes& r);
/// Nullifier sn = h_p(kNullifier || k).
FieldElement nullifier(HashKind kind, const Bytes& k);

/// h_2p invocation counter (thread-local); used by complexity assertions.
uint64_t h2p_call_count();
void reset_h2p_call_count();

// Constants-file interface: modulus, round counts and round constants in hex.
void write_params_text(std::ostream& out, const std::vector<PermutationParams>& params);
std::vector<PermutationParams> read_params_text(std::istream& in); // throws ConfigError
void write_params_file(const std::string& path, const std::vector<PermutationParams>& params);
std::vector<PermutationParams> read_params_file(const std::string& path);

} // namespace amr
