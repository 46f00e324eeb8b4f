#include <benchmark/benchmark.h>

#include <random>

#include "amr/client.hpp"
#include "amr/scenario.hpp"
#include "amr/world.hpp"

using namespace amr;

namespace {

void bench_field_mul(benchmark::State& state) {
    FieldElement a = FieldElement::from_u64(0x1234567890abcdefull);
    FieldElement b = FieldElement::from_u64(0xfedcba0987654321ull);
    for (auto _ : state) {
        a = a * b;
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(bench_field_mul);

void bench_field_inv(benchmark::State& state) {
    FieldElement a = FieldElement::from_u64(0xdeadbeefull);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a.inv());
    }
}
BENCHMARK(bench_field_inv);

void bench_h2p(benchmark::State& state, HashKind kind) {
    FieldElement l = FieldElement::from_u64(1), r = FieldElement::from_u64(2);
    for (auto _ : state) {
        l = h_2p(kind, l, r);
        benchmark::DoNotOptimize(l);
    }
}
BENCHMARK_CAPTURE(bench_h2p, mimc, HashKind::MiMC);
BENCHMARK_CAPTURE(bench_h2p, poseidon, HashKind::Poseidon);

void bench_hp_64_bytes(benchmark::State& state) {
    Bytes data(64, 0x5a);
    for (auto _ : state) benchmark::DoNotOptimize(h_p(HashKind::MiMC, data));
}
BENCHMARK(bench_hp_64_bytes);

void bench_merkle_update(benchmark::State& state) {
    unsigned depth = (unsigned)state.range(0);
    MerkleTree tree(depth, HashKind::MiMC);
    std::mt19937_64 rng(1);
    uint64_t mask = (uint64_t(1) << depth) - 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tree.update(rng() & mask, FieldElement::from_u64(rng())));
    }
}
BENCHMARK(bench_merkle_update)->Arg(8)->Arg(16)->Arg(30);

void bench_prove_verify(benchmark::State& state) {
    std::mt19937_64 rng(7);
    CircuitDesc desc{HashKind::MiMC, (unsigned)state.range(0)};
    auto [ek, vk] = zk_setup(desc, rng);
    MerkleTree tree(desc.depth, desc.kind);
    Bytes sk(32, 1), k(32, 2), r(32, 3);
    FieldElement cm = commit(desc.kind, k, r);
    tree.update(0, cm);
    Statement st{extract_pk(desc.kind, sk), nullifier(desc.kind, k), tree.root()};
    Witness wit{sk, k, r, cm, tree.prove(0)};
    for (auto _ : state) {
        Proof proof = zk_prove(ek, st, wit);
        benchmark::DoNotOptimize(zk_verify(vk, st, proof));
    }
}
BENCHMARK(bench_prove_verify)->Arg(8)->Arg(20);

void bench_scenario_run(benchmark::State& state) {
    Scenario sc;
    sc.seed = 31;
    sc.params.amr.kind = HashKind::MiMC;
    sc.params.amr.amt = Amount::from_coins(10);
    sc.params.amr.amt_rwd = Amount::from_coins(1);
    sc.params.amr.t_con = 2;
    sc.params.amr.depth = 6;
    sc.params.amr.k = 8;
    sc.params.initial_balance = Amount::from_coins(500);
    sc.blocks_to_mine = 12;
    ActorSpec actor;
    actor.name = "solo";
    actor.addresses = 2;
    for (Height h = 1; h <= 8; ++h)
        actor.script.push_back({h, ActorAction::Kind::Deposit, 0, 0, {}, 0, "", 0, Asset::Coin});
    actor.script.push_back({9, ActorAction::Kind::Redeem, 0, 1, {}, 0, "", 0, Asset::Coin});
    actor.script.push_back({10, ActorAction::Kind::Withdraw, 1, 1, {}, 0, "", 0, Asset::Coin});
    sc.actors.push_back(actor);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scenario(sc));
    }
}
BENCHMARK(bench_scenario_run)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
