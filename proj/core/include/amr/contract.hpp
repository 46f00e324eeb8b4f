#pragma once

#include <optional>
#include <set>

#include "amr/ledger.hpp"
#include "amr/lending.hpp"
#include "amr/merkle.hpp"

namespace amr {

/// Immutable contract parameters fixed at deployment.
struct AmrParams {
    Amount amt;                      // fixed deposit denomination
    Amount amt_rwd;                  // governance tokens minted per redeem
    Height t_con = 0;                // reward age condition, in blocks
    unsigned depth = 0;              // Merkle tree depth
    unsigned k = 100;                // root-list length
    HashKind kind = HashKind::MiMC;
    Amount rate_per_block = Amount::from_raw(Amount::kScale); // lending rate
};

/// A reward anchor root. `blockheight` is the height at which the root was
/// rotated into the pending slot; `adopted_at` is when it became the current
/// anchor; `deposit_prefix` is how many DepositList entries the root covers,
/// which clients use to rebuild the anchored tree.
struct RewardRoot {
    FieldElement root;
    Height blockheight = 0;
    Height adopted_at = 0;
    uint64_t deposit_prefix = 0;
};

/// Read-only contract state published to clients at a given height.
struct ContractSnapshot {
    Height height = 0;
    AmrParams params;
    std::vector<FieldElement> deposit_list;
    std::vector<FieldElement> root_list; // oldest first, newest last
    RewardRoot root_rwd_curr;
    RewardRoot root_rwd_next;
    uint64_t next_index = 1;
};

/// Where withdrawal interest shares are announced (the distribution pool).
class InterestSink {
  public:
    virtual ~InterestSink() = default;
    virtual void receive_interest(Amount amount, Height height) = 0;
};

/// The mixer contract: deposits into a commitment tree, nullifier-guarded
/// withdrawals and reward redemptions, a ring buffer of recent roots, and
/// the two-slot reward-root rotation that keeps an anchor at least t_con
/// blocks old.
class AmrContract {
  public:
    AmrContract(AmrParams params, std::mt19937_64& rng); // BadConfig

    const AmrParams& params() const { return params_; }
    const ProvingKey& proving_key() const { return ek_; }
    const VerifyingKey& verifying_key() const { return vk_; }

    /// Moves the denomination from the sender into the lending position,
    /// inserts cm, rotates reward roots when due.
    void accept_deposit(const DepositPayload& payload, const Address& sender, Height height,
                        Chain& chain); // WrongDenomination, TreeFull

    /// Full lending exit, amt to the sender, floor(R/outstanding) to the
    /// pool, remainder reinvested.
    void issue_withdraw(const WithdrawPayload& payload, const Address& sender, Height height,
                        Chain& chain, InterestSink& pool); // StaleRoot, DoubleSpend, BadProof

    /// Nullifies the old note, inserts the refresh commitment and mints
    /// the governance reward.
    void issue_reward(const RedeemPayload& payload, const Address& sender, Height height,
                      Chain& chain); // WrongRewardRoot, DoubleSpend, BadProof, TreeFull

    ContractSnapshot snapshot_view(Height height) const;
    FieldElement state_digest() const;

    uint64_t deposits_outstanding() const {
        return state_.deposit_list.size() - state_.nullifier_list.size();
    }
    uint64_t deposit_count() const { return state_.deposit_list.size(); }
    uint64_t nullifier_count() const { return state_.nullifier_list.size(); }
    const std::vector<FieldElement>& root_list() const { return state_.root_list; }
    const RewardRoot& root_rwd_curr() const { return state_.root_rwd_curr; }
    const RewardRoot& root_rwd_next() const { return state_.root_rwd_next; }
    FieldElement current_root() const { return state_.tree.root(); }
    const LendingModel& lending() const { return state_.lending; }
    u128 share_balance() const { return state_.share_balance; }
    const MerkleTree& tree() const { return state_.tree; }

    // Whole-state snapshot/rollback for the ledger's revert machinery.
    void take_snapshot();
    void rollback();
    void discard_snapshot();

  private:
    struct State {
        MerkleTree tree;
        uint64_t index = 1; // next 1-based insertion counter
        std::vector<FieldElement> deposit_list;
        std::set<FieldElement> nullifier_list;
        std::vector<FieldElement> root_list;
        RewardRoot root_rwd_curr;
        RewardRoot root_rwd_next;
        LendingModel lending;
        Height lending_accrued_to = 0;
        u128 share_balance = 0;

        State(unsigned depth, HashKind kind, Amount rate)
            : tree(depth, kind), lending(rate) {}
    };

    void insert_commitment(const FieldElement& cm, Height height);
    void accrue_lending(Height height, Chain& chain);

    AmrParams params_;
    ProvingKey ek_;
    VerifyingKey vk_;
    State state_;
    std::optional<State> snapshot_;
};

} // namespace amr
