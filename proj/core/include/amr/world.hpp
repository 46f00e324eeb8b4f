#pragma once

#include "amr/contract.hpp"
#include "amr/pool.hpp"

namespace amr {

/// Composes the mixer contract and the distribution pool behind the chain's
/// dispatch interface, and routes withdrawal interest into the pool.
class AmrWorld final : public ContractRegistry, public InterestSink {
  public:
    AmrWorld(const AmrParams& amr_params, const PoolParams& pool_params, std::mt19937_64& rng)
        : contract_(amr_params, rng), pool_(pool_params) {}

    AmrContract& contract() { return contract_; }
    const AmrContract& contract() const { return contract_; }
    RewardPool& pool() { return pool_; }
    const RewardPool& pool() const { return pool_; }

    void apply(const Tx& tx, Height height, Chain& chain) override;
    FieldElement state_digest() const override;
    void snapshot() override;
    void rollback() override;
    void discard_snapshot() override;

    void receive_interest(Amount amount, Height height) override {
        pool_.receive_interest(amount, height);
    }

    /// Reward roots in adoption order, for age audits.
    const std::vector<RewardRoot>& reward_root_history() const { return adoption_history_; }

  private:
    AmrContract contract_;
    RewardPool pool_;
    std::vector<RewardRoot> adoption_history_;
    size_t history_snapshot_size_ = 0;
};

} // namespace amr
