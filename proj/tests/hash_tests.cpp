#include "doctest.h"

#include <random>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <openssl/evp.h>

#include "amr/hash.hpp"

using namespace amr;
using boost::multiprecision::cpp_int;
using boost::multiprecision::powm;

namespace {

// Straight-line big-integer re-implementation of both permutations and the
// sponge, kept independent of the production Montgomery path. Expected values
// frozen below were produced by a third implementation outside this repo.
struct HashOracle {
    cpp_int P{"21888242871839275222246405745257275088548364400416034343698204186575808495617"};
    std::vector<cpp_int> mimc_c, pos_c;
    cpp_int mds[3][3];

    HashOracle() {
        for (int i = 0; i < 91; ++i) mimc_c.push_back(seed_constant("AMR-MiMC-rc-" + std::to_string(i)));
        for (int i = 0; i < 195; ++i) pos_c.push_back(seed_constant("AMR-Poseidon-rc-" + std::to_string(i)));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) mds[i][j] = powm(cpp_int(i + j + 3), P - 2, P);
    }

    cpp_int seed_constant(const std::string& seed) const {
        unsigned char digest[32];
        unsigned int len = 0;
        EVP_Digest(seed.data(), seed.size(), digest, &len, EVP_sha256(), nullptr);
        cpp_int v = 0;
        for (unsigned i = 0; i < len; ++i) v = (v << 8) | digest[i];
        return v % P;
    }

    cpp_int mimc(cpp_int l, cpp_int r) const {
        for (int i = 0; i < 91; ++i) {
            cpp_int t = powm((l + mimc_c[i]) % P, 7, P);
            cpp_int next = (r + t) % P;
            r = l;
            l = next;
        }
        return l;
    }

    cpp_int poseidon(const cpp_int& l, const cpp_int& r) const {
        cpp_int s[3] = {0, l, r};
        for (int round = 0; round < 65; ++round) {
            for (int j = 0; j < 3; ++j) s[j] = (s[j] + pos_c[3 * round + j]) % P;
            if (round < 4 || round >= 61) {
                for (int j = 0; j < 3; ++j) s[j] = powm(s[j], 5, P);
            } else {
                s[0] = powm(s[0], 5, P);
            }
            cpp_int mixed[3];
            for (int i = 0; i < 3; ++i)
                mixed[i] = (mds[i][0] * s[0] + mds[i][1] * s[1] + mds[i][2] * s[2]) % P;
            for (int i = 0; i < 3; ++i) s[i] = mixed[i];
        }
        return s[0];
    }

    cpp_int compress(HashKind kind, const cpp_int& l, const cpp_int& r) const {
        return kind == HashKind::MiMC ? mimc(l, r) : poseidon(l, r);
    }

    cpp_int sponge(HashKind kind, Bytes data) const {
        data.push_back(0x01);
        while (data.size() % 31) data.push_back(0x00);
        cpp_int s = 0;
        for (size_t off = 0; off < data.size(); off += 31) {
            cpp_int chunk = 0;
            for (size_t i = 0; i < 31; ++i) chunk = (chunk << 8) | data[off + i];
            s = compress(kind, s, chunk);
        }
        return s;
    }
};

const HashOracle& oracle() {
    static HashOracle o;
    return o;
}

cpp_int to_int(const FieldElement& x) {
    cpp_int v = 0;
    for (uint8_t b : x.to_bytes()) v = (v << 8) | b;
    return v;
}

FieldElement fe_u64(uint64_t v) { return FieldElement::from_u64(v); }

Bytes seq_bytes(uint8_t start, size_t n) {
    Bytes b(n);
    for (size_t i = 0; i < n; ++i) b[i] = (uint8_t)(start + i);
    return b;
}

} // namespace

TEST_CASE("derived round constants match the oracle derivation") {
    const auto& mimc = PermutationParams::standard(HashKind::MiMC);
    const auto& pos = PermutationParams::standard(HashKind::Poseidon);
    REQUIRE(mimc.round_constants.size() == 91);
    REQUIRE(pos.round_constants.size() == 195);
    CHECK(mimc.round_constants[0].to_hex() ==
          "09e10c282c9e2365531d110c958f3a449d9f2d11df41879ef6f0513206f95cfd");
    CHECK(mimc.round_constants[90].to_hex() ==
          "21f2b7e1ea7d007c7faa0b2d8fd16a393c2b8834fa3d20178f0dc32894ad0301");
    CHECK(pos.round_constants[0].to_hex() ==
          "287f73e950b906d6c1b0b007b437770b2573ec6a6546fb341c1ea757764d3030");
    CHECK(pos.round_constants[194].to_hex() ==
          "28ef22bffdfab227a152a5cdad6437a95483321687650d371ffdd8fdbae4dc11");
    CHECK(pos.mds[0][0].to_hex() ==
          "2042def740cbc01bd03583cf0100e59370229adafbd0f5b62d414e62a0000001");
    for (int i = 0; i < 91; ++i) CHECK(to_int(mimc.round_constants[i]) == oracle().mimc_c[i]);
    for (int i = 0; i < 195; ++i) CHECK(to_int(pos.round_constants[i]) == oracle().pos_c[i]);
}

TEST_CASE("h_2p fixed vectors (frozen from the round-by-round oracle)") {
    CHECK(h_2p(HashKind::MiMC, fe_u64(0), fe_u64(0)).to_hex() ==
          "27cb64dbb4db2b64f013f83d112c2163c1ab042d4a9791cd658aff00c67380e2");
    CHECK(h_2p(HashKind::MiMC, fe_u64(1), fe_u64(2)).to_hex() ==
          "1298f777eb4b72f63166dbc05d3b57f48834f0b479e151ef7bb2801cf26f666f");
    CHECK(h_2p(HashKind::Poseidon, fe_u64(0), fe_u64(0)).to_hex() ==
          "0d175dce41073b93eb7acc186fb0a03a92fe581f4768328f079bd2ac643cacdd");
    CHECK(h_2p(HashKind::Poseidon, fe_u64(1), fe_u64(2)).to_hex() ==
          "05855f2d7cad2ac4bfad230f79caa8b21542c450745229e479bcb28b59b7a8cc");
}

TEST_CASE("h_2p matches the oracle on random inputs") {
    std::mt19937_64 rng(23);
    for (HashKind kind : {HashKind::MiMC, HashKind::Poseidon}) {
        for (int i = 0; i < 40; ++i) {
            cpp_int a = cpp_int(rng()) * rng() + rng();
            cpp_int b = cpp_int(rng()) * rng() + rng();
            FieldElement fa = fe_u64(0), fb = fe_u64(0);
            // build field elements from the oracle integers
            {
                std::ostringstream sa;
                sa << std::hex << a;
                fa = FieldElement::from_hex(sa.str());
                std::ostringstream sb;
                sb << std::hex << b;
                fb = FieldElement::from_hex(sb.str());
            }
            CHECK(to_int(h_2p(kind, fa, fb)) == oracle().compress(kind, a % oracle().P, b % oracle().P));
        }
    }
}

TEST_CASE("h_2p argument order matters") {
    std::mt19937_64 rng(29);
    for (HashKind kind : {HashKind::MiMC, HashKind::Poseidon}) {
        int collisions = 0;
        for (int i = 0; i < 1000; ++i) {
            FieldElement a = fe_u64(rng()), b = fe_u64(rng());
            if (a == b) continue;
            if (h_2p(kind, a, b) == h_2p(kind, b, a)) ++collisions;
        }
        CHECK(collisions == 0);
    }
}

TEST_CASE("h_2p shows no collisions over sampled distinct pairs") {
    std::mt19937_64 rng(31);
    for (HashKind kind : {HashKind::MiMC, HashKind::Poseidon}) {
        std::set<std::string> seen;
        std::set<std::pair<uint64_t, uint64_t>> inputs;
        for (int i = 0; i < 5000; ++i) {
            uint64_t a = rng(), b = rng();
            if (!inputs.insert({a, b}).second) continue;
            CHECK(seen.insert(h_2p(kind, fe_u64(a), fe_u64(b)).to_hex()).second);
        }
    }
}

TEST_CASE("h_p fixed vectors and padding") {
    struct Vec {
        HashKind kind;
        Bytes data;
        const char* hex;
    };
    const std::vector<Vec> vecs = {
        {HashKind::MiMC, {}, "00b0e5fcdf1fdec223a73ba706936335be711b79fa715bb7dc1967daefaa855f"},
        {HashKind::MiMC, {0x00}, "297cdc1a29e6fcb5999cf3c330823fd017adf83630921bacfffe1f3977637939"},
        {HashKind::MiMC, {'a', 'b', 'c'}, "084c54af9523b9a147ee2409cca6449c7fa142592884ae318fd046aad92707eb"},
        {HashKind::MiMC, Bytes(31, 0xaa), "0eaaf869ad2e30f680c17e05eb282305f5921d59ad283a9a36172616d876d05c"},
        {HashKind::MiMC, Bytes(64, 0x5a), "0520cd72dac05c63ddaae90fb8ff1029815849cf7281e0127af82e4498df9235"},
        {HashKind::Poseidon, {}, "1411ce52e0a51dfdc454e7bc9156061674c18e5037346803773757a4e23a14d2"},
        {HashKind::Poseidon, {0x00}, "102748e01845ec7aa3f77cb814cbb85b6ae5153775a906b87cf752e834a65dde"},
        {HashKind::Poseidon, {'a', 'b', 'c'}, "19fcbd121a76d929974ca4b7a33357b12af7163e50329f6bd3b5f1c8aab01297"},
        {HashKind::Poseidon, Bytes(31, 0xaa), "25f4b03ebc0aee6033b7099546e09f2ff75df6772f811b172bc4ac42701e6235"},
        {HashKind::Poseidon, Bytes(64, 0x5a), "0ff3e0453f95b6d70996e29d6b2f81415ab30904638d328dbfaf71f77d0e7584"},
    };
    for (const auto& v : vecs) {
        CHECK(h_p(v.kind, v.data).to_hex() == v.hex);
        CHECK(to_int(h_p(v.kind, v.data)) == oracle().sponge(v.kind, v.data));
        CHECK(h_p(v.kind, v.data) == h_p(v.kind, v.data)); // determinism
    }
    for (HashKind kind : {HashKind::MiMC, HashKind::Poseidon}) {
        CHECK(h_p(kind, Bytes{}) != h_p(kind, Bytes{0x00}));
    }
}

TEST_CASE("commit and nullifier fixed vectors") {
    Bytes k = seq_bytes(0, 32), r = seq_bytes(32, 32);
    CHECK(commit(HashKind::MiMC, k, r).to_hex() ==
          "0e53043d5d0ffcc217d4c7ad722a141956c48ed09dd974b97f575c739439f753");
    CHECK(nullifier(HashKind::MiMC, k).to_hex() ==
          "222ba1f1057a0c96afca162ab84c0caa951aae4e87ef5fa0989bd33ae843765c");
    CHECK(commit(HashKind::Poseidon, k, r).to_hex() ==
          "0ee311410e02f6c4800800b66679f23695d7140d8df9f953355b21202fc8d5fa");
    CHECK(nullifier(HashKind::Poseidon, k).to_hex() ==
          "085fa6ace5630b0604f571225f5e3f0e494be9ab33e1dd92a37929d18c8216f9");
}

TEST_CASE("commit round trip and binding") {
    std::mt19937_64 rng(37);
    Bytes k = seq_bytes(1, 32), r = seq_bytes(101, 32), r2 = seq_bytes(102, 32);
    for (HashKind kind : {HashKind::MiMC, HashKind::Poseidon}) {
        FieldElement cm = commit(kind, k, r);
        CHECK(verify_commit(kind, cm, k, r));
        CHECK(!verify_commit(kind, cm, k, r2));
        CHECK(!verify_commit(kind, FieldElement::zero(), k, r));
    }
    (void)rng;
}

TEST_CASE("commit and nullifier reject malformed notes") {
    Bytes short_k(31, 0), k(32, 0), r(32, 0);
    CHECK_THROWS_AS(commit(HashKind::MiMC, short_k, r), Error);
    CHECK_THROWS_AS(commit(HashKind::MiMC, k, short_k), Error);
    CHECK_THROWS_AS(nullifier(HashKind::MiMC, short_k), Error);
    try {
        nullifier(HashKind::MiMC, short_k);
    } catch (const Error& e) {
        CHECK(e.code() == Err::MalformedNote);
    }
}

TEST_CASE("domain separation: commit and nullifier images disjoint") {
    std::mt19937_64 rng(41);
    for (HashKind kind : {HashKind::MiMC, HashKind::Poseidon}) {
        int overlaps = 0;
        for (int i = 0; i < 500; ++i) {
            Bytes k(32), r(32);
            for (auto& b : k) b = (uint8_t)rng();
            for (auto& b : r) b = (uint8_t)rng();
            if (nullifier(kind, k) == commit(kind, k, r)) ++overlaps;
        }
        CHECK(overlaps == 0);
    }
}

TEST_CASE("constants file round trip") {
    std::vector<PermutationParams> both = {PermutationParams::standard(HashKind::MiMC),
                                           PermutationParams::standard(HashKind::Poseidon)};
    std::ostringstream out;
    write_params_text(out, both);
    std::istringstream in(out.str());
    auto loaded = read_params_text(in);
    REQUIRE(loaded.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(loaded[i].kind == both[i].kind);
        CHECK(loaded[i].round_count == both[i].round_count);
        CHECK(loaded[i].sbox_exponent == both[i].sbox_exponent);
        REQUIRE(loaded[i].round_constants.size() == both[i].round_constants.size());
        for (size_t j = 0; j < loaded[i].round_constants.size(); ++j)
            CHECK(loaded[i].round_constants[j] == both[i].round_constants[j]);
    }
    // a loaded parameter set hashes identically
    CHECK(h_2p(loaded[0], fe_u64(1), fe_u64(2)) == h_2p(HashKind::MiMC, fe_u64(1), fe_u64(2)));
    CHECK(h_2p(loaded[1], fe_u64(1), fe_u64(2)) == h_2p(HashKind::Poseidon, fe_u64(1), fe_u64(2)));
}

TEST_CASE("bundled constants file matches the in-code derivation") {
    auto loaded = read_params_file(std::string(AMR_SOURCE_DIR) + "/data/hash_constants.txt");
    REQUIRE(loaded.size() == 2);
    std::ostringstream bundled, derived;
    write_params_text(bundled, loaded);
    write_params_text(derived, {PermutationParams::standard(HashKind::MiMC),
                                PermutationParams::standard(HashKind::Poseidon)});
    CHECK(bundled.str() == derived.str());
}

TEST_CASE("constants file rejects bad input") {
    std::istringstream bad1("garbage");
    CHECK_THROWS_AS(read_params_text(bad1), Error);
    std::istringstream bad2("amr-hash-constants v1\nmodulus 1234\n");
    CHECK_THROWS_AS(read_params_text(bad2), Error);
    std::istringstream bad3("amr-hash-constants v1\nrounds 7\n");
    CHECK_THROWS_AS(read_params_text(bad3), Error);
}
