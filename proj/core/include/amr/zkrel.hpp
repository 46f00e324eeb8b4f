#pragma once

#include <random>

#include "amr/merkle.hpp"

namespace amr {

/// Public inputs of the withdraw/redeem relation: (pk, sn, root).
struct Statement {
    FieldElement pk;
    FieldElement sn;
    FieldElement root;

    friend bool operator==(const Statement&, const Statement&) = default;
};

/// Private inputs: spending key, note opening and the membership path.
/// `leaf` is the commitment wire of the relation — the tree leaf the path
/// claims to authenticate. The relation requires commit(k_dep, r) == leaf
/// and leaf under root; carrying it lets prove attribute a failure to the
/// commitment conjunct rather than the membership conjunct.
struct Witness {
    Bytes sk;    // 32 bytes
    Bytes k_dep; // 32 bytes
    Bytes r;     // 32 bytes
    FieldElement leaf;
    MerklePath path;
};

/// The circuit a key pair is bound to.
struct CircuitDesc {
    HashKind kind = HashKind::MiMC;
    unsigned depth = 0;

    friend bool operator==(const CircuitDesc&, const CircuitDesc&) = default;
};

FieldElement circuit_id(const CircuitDesc& desc);

/// Simulation-sound backend: proving and verifying share a secret trapdoor
/// generated at setup. A proof is a tag over (trapdoor, statement), so it
/// reveals nothing about the witness, and parties without the trapdoor
/// cannot forge tags. Key material is insecure test fixture by construction.
struct ProvingKey {
    CircuitDesc circuit;
    FieldElement circuit_id;
    FieldElement trapdoor;
};

struct VerifyingKey {
    CircuitDesc circuit;
    FieldElement circuit_id;
    FieldElement trapdoor;
};

struct Proof {
    FieldElement tag;

    std::string to_hex() const { return tag.to_hex(); }
    static Proof from_hex(const std::string& hex) { return Proof{FieldElement::from_hex(hex)}; }
    friend bool operator==(const Proof&, const Proof&) = default;
};

/// pk = h_p(kPubKey || sk); doubles as the account address.
FieldElement extract_pk(HashKind kind, const Bytes& sk);

std::pair<ProvingKey, VerifyingKey> zk_setup(const CircuitDesc& desc, std::mt19937_64& rng);

enum class Conjunct { PublicKey, Nullifier, Commitment, Membership };
const char* conjunct_name(Conjunct c);

/// Raised by zk_prove when the witness fails the relation. The failed
/// conjunct is diagnostic only and never reaches the proof encoding.
class UnsatisfiedRelation : public Error {
  public:
    explicit UnsatisfiedRelation(Conjunct c)
        : Error(Err::UnsatisfiedRelation, std::string("relation conjunct failed: ") + conjunct_name(c)),
          conjunct_(c) {}

    Conjunct conjunct() const { return conjunct_; }

  private:
    Conjunct conjunct_;
};

/// Checks all four conjuncts of the withdraw relation against the witness
/// and, if satisfied, emits the trapdoor tag for the statement.
Proof zk_prove(const ProvingKey& ek, const Statement& st, const Witness& wit);

/// 1 iff the tag recomputes from the verifier trapdoor and the statement.
bool zk_verify(const VerifyingKey& vk, const Statement& st, const Proof& proof);

// Key fixture files. The format spells out that the trapdoor makes these
// test fixtures only — anyone holding the file can forge proofs.
void write_keys_text(std::ostream& out, const VerifyingKey& vk);
std::pair<ProvingKey, VerifyingKey> read_keys_text(std::istream& in); // ConfigError

} // namespace amr
