#pragma once

#include <string>

#include "amr/client.hpp"
#include "amr/privacy/ground_truth.hpp"
#include "amr/privacy/view.hpp"
#include "amr/world.hpp"

namespace amr {

/// One scripted step of an actor. Heights are block heights at which the
/// resulting transaction enters the mempool (it executes in that block).
struct ActorAction {
    enum class Kind { Deposit, Withdraw, Redeem, Lock, Claim, Unlock, Transfer, ReplayWithdraw };

    Height height = 0;
    Kind kind = Kind::Deposit;
    size_t note = 0;       // withdraw/redeem/replay: actor-local note ordinal
    size_t address = 0;    // key index the tx is sent from
    Amount amount;         // lock gamma / transfer amount
    Height t_lock = 0;     // lock duration
    std::string to_actor;  // transfer target
    size_t to_address = 0;
    Asset asset = Asset::Coin;
};

const char* action_kind_name(ActorAction::Kind kind);

struct ActorSpec {
    std::string name;
    bool honest = true;
    std::optional<uint32_t> link_group;
    unsigned addresses = 1;
    std::vector<ActorAction> script;
};

struct ScenarioParams {
    AmrParams amr;
    PoolParams pool;
    std::map<TxKind, Amount> fees; // missing kinds default to zero fee
    Amount initial_balance = Amount::from_coins(100);

    Amount fee(TxKind kind) const {
        auto it = fees.find(kind);
        return it == fees.end() ? Amount{} : it->second;
    }
};

/// A fully deterministic experiment: seed, parameters, actor scripts and a
/// mining schedule. Loadable from the documented JSON schema.
struct Scenario {
    uint64_t seed = 0;
    ScenarioParams params;
    OrderingPolicy ordering;
    Height blocks_to_mine = 0;
    std::vector<ActorSpec> actors;

    void validate() const; // ConfigError
    static Scenario from_json_text(const std::string& text); // ConfigError
    static Scenario from_file(const std::string& path);      // ConfigError
};

struct AuditReport {
    bool coin_conservation = true;
    bool gov_conservation = true;
    bool payout_bound = true;
    bool nullifier_single_use = true;
    bool redeem_age = true;
    bool wallet_agreement = true;
    std::vector<std::string> failures;

    bool all_ok() const {
        return coin_conservation && gov_conservation && payout_bound && nullifier_single_use &&
               redeem_age && wallet_agreement;
    }
};

/// A successful nullifier reveal observed on-chain, for privacy analysis.
struct NullifierReveal {
    FieldElement sn;
    Height height = 0;
    bool is_redeem = false;
    bool honest = true;
};

struct ActorBalance {
    std::string actor;
    size_t address_index = 0;
    Amount coins;
    Amount gov;
};

struct ScenarioResult {
    std::string event_log;    // line-delimited records, header first
    std::string summary_json; // machine-readable run summary
    std::string tree_snapshot; // final deposit-tree snapshot (text format)
    AuditReport audits;

    Height final_height = 0;
    uint64_t deposits_outstanding = 0;
    uint64_t deposit_count = 0;
    uint64_t nullifier_count = 0;
    uint64_t successful_redeems = 0;
    std::map<std::string, uint64_t> revert_counts; // error name -> count

    AnonymityView view;
    GroundTruth truth;
    std::vector<NullifierReveal> reveals;
    std::vector<ActorBalance> balances;
    Height t_con = 0;
};

ScenarioResult run_scenario(const Scenario& scenario);

} // namespace amr
