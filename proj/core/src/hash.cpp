#include "amr/hash.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace amr {

namespace {

thread_local uint64_t g_h2p_calls = 0;

constexpr unsigned kMimcRounds = 91;
constexpr unsigned kMimcExponent = 7;
constexpr unsigned kPoseidonWidth = 3;
constexpr unsigned kPoseidonFullRounds = 8;
constexpr unsigned kPoseidonPartialRounds = 57;
constexpr unsigned kPoseidonExponent = 5;

FieldElement constant_from_seed(const std::string& seed) {
    unsigned char digest[32];
    unsigned int len = 0;
    EVP_Digest(seed.data(), seed.size(), digest, &len, EVP_sha256(), nullptr);
    return FieldElement::from_bytes_reduce(digest, len);
}

FieldElement sbox(const FieldElement& x, unsigned exponent) {
    FieldElement x2 = x * x;
    FieldElement x4 = x2 * x2;
    switch (exponent) {
        case 5: return x4 * x;
        case 7: return x4 * x2 * x;
        default: return x.pow(exponent);
    }
}

FieldElement mimc_compress(const PermutationParams& pp, FieldElement left, FieldElement right) {
    // Feistel rounds: t = (xL + c_i)^7; (xL, xR) <- (xR + t, xL).
    for (unsigned i = 0; i < pp.round_count; ++i) {
        FieldElement t = sbox(left + pp.round_constants[i], pp.sbox_exponent);
        FieldElement next = right + t;
        right = left;
        left = next;
    }
    return left;
}

FieldElement poseidon_compress(const PermutationParams& pp, const FieldElement& left,
                               const FieldElement& right) {
    // Width-3 state (capacity, rate0, rate1); output is the capacity element.
    std::array<FieldElement, 3> s = {FieldElement::zero(), left, right};
    const unsigned half_full = pp.full_rounds / 2;
    const unsigned total = pp.full_rounds + pp.partial_rounds;
    for (unsigned round = 0; round < total; ++round) {
        for (unsigned j = 0; j < 3; ++j) s[j] = s[j] + pp.round_constants[3 * round + j];
        if (round < half_full || round >= half_full + pp.partial_rounds) {
            for (unsigned j = 0; j < 3; ++j) s[j] = sbox(s[j], pp.sbox_exponent);
        } else {
            s[0] = sbox(s[0], pp.sbox_exponent);
        }
        std::array<FieldElement, 3> mixed;
        for (unsigned i = 0; i < 3; ++i) {
            FieldElement acc = pp.mds[i][0] * s[0];
            acc = acc + pp.mds[i][1] * s[1];
            acc = acc + pp.mds[i][2] * s[2];
            mixed[i] = acc;
        }
        s = mixed;
    }
    return s[0];
}

FieldElement det3(const std::vector<std::vector<FieldElement>>& m) {
    FieldElement a = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    FieldElement b = m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]);
    FieldElement c = m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return a - b + c;
}

} // namespace

const char* hash_kind_name(HashKind kind) {
    return kind == HashKind::MiMC ? "mimc" : "poseidon";
}

HashKind hash_kind_from_name(const std::string& name) {
    if (name == "mimc" || name == "MiMC") return HashKind::MiMC;
    if (name == "poseidon" || name == "Poseidon") return HashKind::Poseidon;
    throw Error(Err::ConfigError, "unknown hash kind '" + name + "'");
}

PermutationParams PermutationParams::derive(HashKind kind) {
    PermutationParams pp;
    pp.kind = kind;
    const std::string prefix = std::string("AMR-") + (kind == HashKind::MiMC ? "MiMC" : "Poseidon") + "-rc-";
    if (kind == HashKind::MiMC) {
        pp.round_count = kMimcRounds;
        pp.sbox_exponent = kMimcExponent;
        pp.round_constants.reserve(pp.round_count);
        for (unsigned i = 0; i < pp.round_count; ++i)
            pp.round_constants.push_back(constant_from_seed(prefix + std::to_string(i)));
    } else {
        pp.width = kPoseidonWidth;
        pp.full_rounds = kPoseidonFullRounds;
        pp.partial_rounds = kPoseidonPartialRounds;
        pp.round_count = pp.full_rounds + pp.partial_rounds;
        pp.sbox_exponent = kPoseidonExponent;
        pp.round_constants.reserve(pp.width * pp.round_count);
        for (unsigned i = 0; i < pp.width * pp.round_count; ++i)
            pp.round_constants.push_back(constant_from_seed(prefix + std::to_string(i)));
        pp.mds.assign(pp.width, std::vector<FieldElement>(pp.width));
        for (unsigned i = 0; i < pp.width; ++i) {
            for (unsigned j = 0; j < pp.width; ++j) {
                pp.mds[i][j] = FieldElement::from_u64(i + j + pp.width).inv();
            }
        }
        if (det3(pp.mds).is_zero()) throw Error(Err::BadConfig, "singular Poseidon MDS matrix");
    }
    return pp;
}

const PermutationParams& PermutationParams::standard(HashKind kind) {
    static const PermutationParams mimc = derive(HashKind::MiMC);
    static const PermutationParams poseidon = derive(HashKind::Poseidon);
    return kind == HashKind::MiMC ? mimc : poseidon;
}

FieldElement h_2p(const PermutationParams& pp, const FieldElement& left,
                  const FieldElement& right) {
    ++g_h2p_calls;
    return pp.kind == HashKind::MiMC ? mimc_compress(pp, left, right)
                                     : poseidon_compress(pp, left, right);
}

FieldElement h_2p(HashKind kind, const FieldElement& left, const FieldElement& right) {
    return h_2p(PermutationParams::standard(kind), left, right);
}

FieldElement h_p(HashKind kind, const uint8_t* data, size_t len) {
    // 10*-style byte padding to a 31-byte boundary keeps the map injective:
    // "" and "\x00" absorb different chunk streams.
    Bytes padded(data, data + len);
    padded.push_back(0x01);
    while (padded.size() % 31) padded.push_back(0x00);

    FieldElement state = FieldElement::zero();
    for (size_t off = 0; off < padded.size(); off += 31) {
        FieldElement chunk = FieldElement::from_bytes_reduce(padded.data() + off, 31);
        state = h_2p(kind, state, chunk);
    }
    return state;
}

FieldElement h_p(HashKind kind, const Bytes& data) { return h_p(kind, data.data(), data.size()); }

FieldElement commit(HashKind kind, const Bytes& k, const Bytes& r) {
    if (k.size() != 32 || r.size() != 32)
        throw Error(Err::MalformedNote, "note components must be 32 bytes");
    Bytes buf;
    buf.reserve(65);
    buf.push_back(domain::kCommit);
    buf.insert(buf.end(), k.begin(), k.end());
    buf.insert(buf.end(), r.begin(), r.end());
    return h_p(kind, buf);
}

bool verify_commit(HashKind kind, const FieldElement& cm, const Bytes& k, const Bytes& r) {
    return cm == commit(kind, k, r);
}

FieldElement nullifier(HashKind kind, const Bytes& k) {
    if (k.size() != 32) throw Error(Err::MalformedNote, "nullifier key must be 32 bytes");
    Bytes buf;
    buf.reserve(33);
    buf.push_back(domain::kNullifier);
    buf.insert(buf.end(), k.begin(), k.end());
    return h_p(kind, buf);
}

uint64_t h2p_call_count() { return g_h2p_calls; }
void reset_h2p_call_count() { g_h2p_calls = 0; }

void write_params_text(std::ostream& out, const std::vector<PermutationParams>& params) {
    out << "amr-hash-constants v1\n";
    out << "modulus " << FieldElement::modulus_hex() << "\n";
    for (const auto& pp : params) {
        out << "[" << hash_kind_name(pp.kind) << "]\n";
        out << "rounds " << pp.round_count << "\n";
        out << "sbox_exponent " << pp.sbox_exponent << "\n";
        if (pp.kind == HashKind::Poseidon) {
            out << "width " << pp.width << "\n";
            out << "full_rounds " << pp.full_rounds << "\n";
            out << "partial_rounds " << pp.partial_rounds << "\n";
        }
        for (size_t i = 0; i < pp.round_constants.size(); ++i)
            out << "rc " << i << " " << pp.round_constants[i].to_hex() << "\n";
        for (size_t i = 0; i < pp.mds.size(); ++i)
            for (size_t j = 0; j < pp.mds[i].size(); ++j)
                out << "mds " << i << " " << j << " " << pp.mds[i][j].to_hex() << "\n";
    }
}

std::vector<PermutationParams> read_params_text(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "amr-hash-constants v1")
        throw Error(Err::ConfigError, "bad constants file header");

    std::vector<PermutationParams> out;
    PermutationParams* cur = nullptr;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        auto fail = [&](const std::string& msg) -> Error {
            return Error(Err::ConfigError, "constants file line " + std::to_string(lineno) + ": " + msg);
        };
        if (key == "modulus") {
            std::string hex;
            ls >> hex;
            if (hex != FieldElement::modulus_hex())
                throw fail("modulus does not match the active field");
        } else if (key == "[mimc]" || key == "[poseidon]") {
            out.emplace_back();
            cur = &out.back();
            cur->kind = key == "[mimc]" ? HashKind::MiMC : HashKind::Poseidon;
        } else if (cur == nullptr) {
            throw fail("entry before any section");
        } else if (key == "rounds") {
            ls >> cur->round_count;
        } else if (key == "sbox_exponent") {
            ls >> cur->sbox_exponent;
        } else if (key == "width") {
            ls >> cur->width;
        } else if (key == "full_rounds") {
            ls >> cur->full_rounds;
        } else if (key == "partial_rounds") {
            ls >> cur->partial_rounds;
        } else if (key == "rc") {
            size_t idx;
            std::string hex;
            ls >> idx >> hex;
            if (!ls) throw fail("malformed rc entry");
            if (idx != cur->round_constants.size()) throw fail("rc entries out of order");
            cur->round_constants.push_back(FieldElement::from_hex(hex));
        } else if (key == "mds") {
            size_t i, j;
            std::string hex;
            ls >> i >> j >> hex;
            if (!ls) throw fail("malformed mds entry");
            if (cur->mds.size() <= i) cur->mds.resize(i + 1);
            if (cur->mds[i].size() <= j) cur->mds[i].resize(j + 1);
            cur->mds[i][j] = FieldElement::from_hex(hex);
        } else {
            throw fail("unknown key '" + key + "'");
        }
    }
    for (const auto& pp : out) {
        size_t want = pp.kind == HashKind::MiMC ? pp.round_count : pp.width * pp.round_count;
        if (pp.round_constants.size() != want)
            throw Error(Err::ConfigError, "constants file: wrong round-constant count");
    }
    return out;
}

void write_params_file(const std::string& path, const std::vector<PermutationParams>& params) {
    std::ofstream f(path);
    if (!f) throw Error(Err::ConfigError, "cannot open '" + path + "' for writing");
    write_params_text(f, params);
}

std::vector<PermutationParams> read_params_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Err::ConfigError, "cannot open constants file '" + path + "'");
    return read_params_text(f);
}

} // namespace amr
