#include "amr/zkrel.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace amr {

namespace {

void append_fe(Bytes& buf, const FieldElement& x) {
    auto b = x.to_bytes();
    buf.insert(buf.end(), b.begin(), b.end());
}

FieldElement proof_tag(HashKind kind, const FieldElement& trapdoor, const Statement& st) {
    Bytes buf;
    buf.reserve(1 + 4 * 32);
    buf.push_back(domain::kProof);
    append_fe(buf, trapdoor);
    append_fe(buf, st.pk);
    append_fe(buf, st.sn);
    append_fe(buf, st.root);
    return h_p(kind, buf);
}

} // namespace

const char* conjunct_name(Conjunct c) {
    switch (c) {
        case Conjunct::PublicKey: return "public-key";
        case Conjunct::Nullifier: return "nullifier";
        case Conjunct::Commitment: return "commitment";
        case Conjunct::Membership: return "membership";
    }
    return "?";
}

FieldElement extract_pk(HashKind kind, const Bytes& sk) {
    if (sk.size() != 32) throw Error(Err::MalformedNote, "secret key must be 32 bytes");
    Bytes buf;
    buf.reserve(33);
    buf.push_back(domain::kPubKey);
    buf.insert(buf.end(), sk.begin(), sk.end());
    return h_p(kind, buf);
}

FieldElement circuit_id(const CircuitDesc& desc) {
    Bytes buf = {uint8_t('C'), uint8_t(desc.kind == HashKind::MiMC ? 1 : 2),
                 uint8_t(desc.depth >> 8), uint8_t(desc.depth & 0xff)};
    return h_p(desc.kind, buf);
}

std::pair<ProvingKey, VerifyingKey> zk_setup(const CircuitDesc& desc, std::mt19937_64& rng) {
    Bytes seed(32);
    for (auto& b : seed) b = (uint8_t)rng();
    FieldElement trapdoor = FieldElement::from_bytes_reduce(seed.data(), seed.size());
    FieldElement id = circuit_id(desc);
    return {ProvingKey{desc, id, trapdoor}, VerifyingKey{desc, id, trapdoor}};
}

Proof zk_prove(const ProvingKey& ek, const Statement& st, const Witness& wit) {
    const HashKind kind = ek.circuit.kind;
    if (extract_pk(kind, wit.sk) != st.pk) throw UnsatisfiedRelation(Conjunct::PublicKey);
    if (nullifier(kind, wit.k_dep) != st.sn) throw UnsatisfiedRelation(Conjunct::Nullifier);
    if (commit(kind, wit.k_dep, wit.r) != wit.leaf) throw UnsatisfiedRelation(Conjunct::Commitment);
    if (wit.path.siblings.size() != ek.circuit.depth)
        throw UnsatisfiedRelation(Conjunct::Membership);
    if (!merkle_verify(kind, ek.circuit.depth, wit.path.index, wit.leaf, st.root, wit.path))
        throw UnsatisfiedRelation(Conjunct::Membership);
    return Proof{proof_tag(kind, ek.trapdoor, st)};
}

bool zk_verify(const VerifyingKey& vk, const Statement& st, const Proof& proof) {
    return proof.tag == proof_tag(vk.circuit.kind, vk.trapdoor, st);
}

void write_keys_text(std::ostream& out, const VerifyingKey& vk) {
    out << "amr-zk-keys v1 INSECURE-TEST-FIXTURE\n";
    out << "# holder of the trapdoor can forge proofs; never use outside tests\n";
    out << "kind " << hash_kind_name(vk.circuit.kind) << "\n";
    out << "depth " << vk.circuit.depth << "\n";
    out << "circuit_id " << vk.circuit_id.to_hex() << "\n";
    out << "trapdoor " << vk.trapdoor.to_hex() << "\n";
}

std::pair<ProvingKey, VerifyingKey> read_keys_text(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "amr-zk-keys v1 INSECURE-TEST-FIXTURE")
        throw Error(Err::ConfigError, "bad key file header");
    CircuitDesc desc;
    FieldElement id, trapdoor;
    bool have_id = false, have_trapdoor = false, have_depth = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key, value;
        ls >> key >> value;
        if (!ls) throw Error(Err::ConfigError, "malformed key file line");
        if (key == "kind") {
            desc.kind = hash_kind_from_name(value);
        } else if (key == "depth") {
            desc.depth = (unsigned)std::stoul(value);
            have_depth = true;
        } else if (key == "circuit_id") {
            id = FieldElement::from_hex(value);
            have_id = true;
        } else if (key == "trapdoor") {
            trapdoor = FieldElement::from_hex(value);
            have_trapdoor = true;
        } else {
            throw Error(Err::ConfigError, "unknown key file entry '" + key + "'");
        }
    }
    if (!have_id || !have_trapdoor || !have_depth)
        throw Error(Err::ConfigError, "key file missing required entries");
    if (id != circuit_id(desc))
        throw Error(Err::ConfigError, "key file circuit_id does not match its parameters");
    return {ProvingKey{desc, id, trapdoor}, VerifyingKey{desc, id, trapdoor}};
}

} // namespace amr
