#include "doctest.h"

#include <random>

#include "amr/world.hpp"

using namespace amr;

namespace {

struct Env {
    std::mt19937_64 rng{42};
    Chain chain{HashKind::MiMC};
    AmrWorld world;

    Env(AmrParams params = default_params())
        : world(params, PoolParams{1000}, rng) {}

    static AmrParams default_params() {
        AmrParams p;
        p.amt = Amount::from_coins(10);
        p.amt_rwd = Amount::from_coins(1);
        p.t_con = 5;
        p.depth = 4;
        p.k = 4;
        p.kind = HashKind::MiMC;
        p.rate_per_block = Amount::parse("1");
        return p;
    }

    Bytes key() {
        Bytes sk(32);
        for (auto& b : sk) b = (uint8_t)rng();
        return sk;
    }

    Address fund(const Bytes& sk, const char* coins, bool adversary = false) {
        return chain.create_account(sk, Amount::parse(coins), adversary);
    }
};

Tx transfer_tx(Chain& chain, const Bytes& sk, const Address& to, const char* amount,
               const char* fee, Asset asset = Asset::Coin) {
    return chain.make_tx(sk, TxKind::Transfer,
                         TransferPayload{to, Amount::parse(amount), asset}, Amount::parse(fee));
}

} // namespace

TEST_CASE("forged signatures are rejected at submission") {
    Env env;
    Bytes a = env.key(), b = env.key();
    Address addr_a = env.fund(a, "100");
    env.fund(b, "100");

    Tx tx = transfer_tx(env.chain, a, addr_a, "1", "0.1");
    tx.signature = tx.signature + FieldElement::one();
    CHECK_THROWS_AS(env.chain.submit(tx), Error);

    // signing with someone else's key fails too
    Tx other = transfer_tx(env.chain, b, addr_a, "1", "0.1");
    other.sender = addr_a;
    CHECK_THROWS_AS(env.chain.submit(other), Error);

    // contract addresses never sign
    Tx from_contract = transfer_tx(env.chain, a, addr_a, "1", "0");
    from_contract.sender = amr_contract_address();
    CHECK_THROWS_AS(env.chain.submit(from_contract), Error);
}

TEST_CASE("submission balance boundary is exact") {
    Env env;
    Bytes a = env.key(), b = env.key();
    env.fund(a, "10.02");
    Address to = env.fund(b, "0");

    Tx exact = transfer_tx(env.chain, a, to, "10", "0.02");
    CHECK_NOTHROW(env.chain.submit(exact));

    Env env2;
    Bytes c = env2.key(), d = env2.key();
    Address from = env2.chain.create_account(c, Amount::from_raw(Amount::parse("10.02").raw - 1));
    (void)from;
    Address to2 = env2.fund(d, "0");
    Tx short_one = transfer_tx(env2.chain, c, to2, "10", "0.02");
    CHECK_THROWS_AS(env2.chain.submit(short_one), Error);
    try {
        env2.chain.submit(short_one);
    } catch (const Error& e) {
        CHECK(e.code() == Err::InsufficientBalance);
    }
}

TEST_CASE("submitted txs execute in the next block under FIFO") {
    Env env;
    Bytes a = env.key(), b = env.key();
    env.fund(a, "100");
    Address to = env.fund(b, "0");
    env.chain.submit(transfer_tx(env.chain, a, to, "5", "0"));
    Block& block = env.chain.mine_block(&env.world);
    CHECK(block.height == 1);
    REQUIRE(block.records.size() == 1);
    CHECK(block.records[0].ok);
    CHECK(env.chain.balance(to) == Amount::parse("5"));
    CHECK(env.chain.mempool().empty());
}

TEST_CASE("mining an empty mempool yields an empty block and bumps the height") {
    Env env;
    Block& block = env.chain.mine_block(&env.world);
    CHECK(block.height == 1);
    CHECK(block.txs.empty());
    CHECK(env.chain.height() == 1);
}

TEST_CASE("AdversaryFirst places adversary txs before honest ones") {
    Env env;
    env.chain.set_policy(OrderingPolicy::adversary_first());
    Bytes honest = env.key(), adv = env.key();
    Address h_addr = env.fund(honest, "100");
    Address a_addr = env.fund(adv, "100", true);

    env.chain.submit(transfer_tx(env.chain, honest, h_addr, "1", "0"));
    env.chain.submit(transfer_tx(env.chain, adv, a_addr, "1", "0"));
    env.chain.submit(transfer_tx(env.chain, honest, h_addr, "2", "0"));
    env.chain.submit(transfer_tx(env.chain, adv, a_addr, "2", "0"));

    Block& block = env.chain.mine_block(&env.world);
    REQUIRE(block.txs.size() == 4);
    CHECK(block.txs[0].sender == a_addr);
    CHECK(block.txs[1].sender == a_addr);
    CHECK(block.txs[2].sender == h_addr);
    CHECK(block.txs[3].sender == h_addr);
    // stable within each class
    CHECK(std::get<TransferPayload>(block.txs[0].payload).amount == Amount::parse("1"));
    CHECK(std::get<TransferPayload>(block.txs[2].payload).amount == Amount::parse("1"));
}

TEST_CASE("custom permutations reorder within the block") {
    Env env;
    OrderingPolicy policy{OrderingPolicy::Kind::Custom, {{1, {2, 0, 1}}}};
    env.chain.set_policy(policy);
    Bytes a = env.key();
    Address addr = env.fund(a, "100");
    for (const char* amt : {"1", "2", "3"})
        env.chain.submit(transfer_tx(env.chain, a, addr, amt, "0"));
    Block& block = env.chain.mine_block(&env.world);
    CHECK(std::get<TransferPayload>(block.txs[0].payload).amount == Amount::parse("3"));
    CHECK(std::get<TransferPayload>(block.txs[1].payload).amount == Amount::parse("1"));
    CHECK(std::get<TransferPayload>(block.txs[2].payload).amount == Amount::parse("2"));

    OrderingPolicy bad{OrderingPolicy::Kind::Custom, {{2, {0, 0, 1}}}};
    env.chain.set_policy(bad);
    env.chain.submit(transfer_tx(env.chain, a, addr, "1", "0"));
    env.chain.submit(transfer_tx(env.chain, a, addr, "1", "0"));
    env.chain.submit(transfer_tx(env.chain, a, addr, "1", "0"));
    CHECK_THROWS_AS(env.chain.mine_block(&env.world), Error);
}

TEST_CASE("self transfer is a net no-op and supply is conserved") {
    Env env;
    Bytes a = env.key();
    Address addr = env.fund(a, "50");
    Amount before = env.chain.balance(addr);
    env.chain.submit(transfer_tx(env.chain, a, addr, "7", "0"));
    env.chain.mine_block(&env.world);
    CHECK(env.chain.balance(addr) == before);
    CHECK(env.chain.total_supply(Asset::Coin) == env.chain.initial_supply(Asset::Coin));
}

TEST_CASE("randomized transfer sequences conserve supply (running-sum oracle)") {
    Env env;
    std::mt19937_64 rng(7);
    std::vector<Bytes> keys;
    std::vector<Address> addrs;
    u128 oracle_total = 0;
    for (int i = 0; i < 4; ++i) {
        keys.push_back(env.key());
        addrs.push_back(env.fund(keys.back(), "25"));
        oracle_total += Amount::parse("25").raw;
    }
    for (int round = 0; round < 20; ++round) {
        size_t from = rng() % 4, to = rng() % 4;
        Amount amount = Amount::from_raw(rng() % Amount::kScale);
        if (env.chain.balance(addrs[from]) < amount) continue;
        env.chain.submit(env.chain.make_tx(keys[from], TxKind::Transfer,
                                           TransferPayload{addrs[to], amount, Asset::Coin},
                                           Amount{}));
        env.chain.mine_block(&env.world);
        CHECK(env.chain.total_supply(Asset::Coin).raw == oracle_total);
    }
}

TEST_CASE("reverted txs consume the fee and nothing else") {
    Env env;
    Bytes a = env.key();
    env.fund(a, "100");

    // wrong denomination reverts inside the contract handler
    Tx bad = env.chain.make_tx(
        a, TxKind::Deposit,
        DepositPayload{Amount::parse("11"), FieldElement::from_u64(1)}, Amount::parse("0.02"));
    env.chain.submit(bad);

    FieldElement contract_before = env.world.state_digest();
    Amount sink_before = env.chain.balance(fee_sink_address());
    Block& block = env.chain.mine_block(&env.world);

    REQUIRE(block.records.size() == 1);
    CHECK(!block.records[0].ok);
    CHECK(*block.records[0].error == Err::WrongDenomination);
    CHECK(env.world.state_digest() == contract_before);
    CHECK(env.chain.balance(fee_sink_address()) ==
          sink_before + Amount::parse("0.02"));
    // snapshot-compare oracle: only the fee moved
    CHECK(env.chain.total_supply(Asset::Coin) == env.chain.initial_supply(Asset::Coin));
}

namespace {

// Registry that mints interest and then reverts, to pin down rollback of the
// minted-supply accounting.
struct MintingThenFailing : ContractRegistry {
    void apply(const Tx&, Height height, Chain& chain) override {
        chain.mint(lending_address(), Amount::parse("3"), Asset::Coin);
        chain.mint(fee_sink_address(), Amount::parse("1"), Asset::GovToken);
        if (height >= 1) throw Error(Err::BadProof, "always fails after minting");
    }
    FieldElement state_digest() const override { return FieldElement::zero(); }
    void snapshot() override {}
    void rollback() override {}
    void discard_snapshot() override {}
};

} // namespace

TEST_CASE("a revert after minting rolls the minted supply back") {
    Env env;
    MintingThenFailing registry;
    Bytes a = env.key();
    env.fund(a, "100");
    Tx tx = env.chain.make_tx(a, TxKind::Claim, ClaimPayload{}, Amount::parse("0.01"));
    env.chain.submit(tx);
    Block& block = env.chain.mine_block(&registry);
    REQUIRE(!block.records[0].ok);
    CHECK(env.chain.minted(Asset::Coin).is_zero());
    CHECK(env.chain.minted(Asset::GovToken).is_zero());
    CHECK(env.chain.total_supply(Asset::Coin) == env.chain.initial_supply(Asset::Coin));
    CHECK(env.chain.total_supply(Asset::GovToken).is_zero());
}

TEST_CASE("mint is tracked separately from initial supply") {
    Env env;
    Bytes a = env.key();
    Address addr = env.fund(a, "1");
    env.chain.mint(addr, Amount::parse("2.5"), Asset::Coin);
    env.chain.mint(addr, Amount::parse("1"), Asset::GovToken);
    CHECK(env.chain.minted(Asset::Coin) == Amount::parse("2.5"));
    CHECK(env.chain.minted(Asset::GovToken) == Amount::parse("1"));
    CHECK(env.chain.total_supply(Asset::Coin) ==
          env.chain.initial_supply(Asset::Coin) + Amount::parse("2.5"));
    CHECK(env.chain.total_supply(Asset::GovToken) == Amount::parse("1"));
}

TEST_CASE("identical seeds give identical world digests") {
    auto run = []() {
        Env env;
        Bytes a = env.key(), b = env.key();
        Address addr_a = env.fund(a, "100");
        env.fund(b, "100");
        env.chain.submit(transfer_tx(env.chain, b, addr_a, "3", "0.01"));
        env.chain.mine_block(&env.world);
        return env.chain.world_digest(&env.world).to_hex();
    };
    CHECK(run() == run());
}
