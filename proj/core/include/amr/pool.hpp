#pragma once

#include <map>
#include <optional>
#include <vector>

#include "amr/ledger.hpp"

namespace amr {

/// An escrowed governance-token position. Weight decays linearly with the
/// blocks left to unlock: gamma * (unlock - h) / t_max, zero once expired.
struct TokenLock {
    Address owner;
    Amount gamma;
    Height unlock_height = 0;
    Height t_lock = 0;
    uint64_t claimed_epoch = 0; // last interest epoch this lock claimed in
};

struct PoolParams {
    Height t_max = 100000;
};

/// Interest-distribution pool with time-weighted claims. Claims are pull
/// based and sequential: a claim takes floor(balance * w/W) computed over
/// the lockers that have not claimed since the last interest arrived, then
/// marks the claimer as served for the current epoch.
class RewardPool {
  public:
    explicit RewardPool(PoolParams params = {}); // BadConfig

    Height t_max() const { return params_.t_max; }
    Amount interest_balance() const { return state_.interest_balance; }
    const std::vector<TokenLock>& locks() const { return state_.locks; }
    Amount claimed_total(const Address& addr) const;

    /// Escrow gamma tokens for t_lock blocks. InsufficientTokens, BadDuration,
    /// ZeroAmount.
    void create_lock(const Address& owner, Amount gamma, Height t_lock, Height height,
                     Chain& chain);

    Amount voting_weight(const TokenLock& lock, Height height) const;
    /// Sum of an address's lock weights at a height.
    Amount weight_of(const Address& addr, Height height) const;

    /// Interest arriving from the contract; a positive amount opens a new
    /// claim epoch.
    void receive_interest(Amount amount, Height height);

    /// Pay the caller its proportional share of the current balance.
    /// NoLock if the address holds no lock, ZeroTotalWeight if no unclaimed
    /// weight is left in this epoch.
    Amount claim(const Address& addr, Height height, Chain& chain);

    /// Release every expired lock of `addr`; returns the tokens returned.
    Amount unlock(const Address& addr, Height height, Chain& chain); // NoLock

    FieldElement state_digest(HashKind kind) const;

    void take_snapshot();
    void rollback();
    void discard_snapshot();

  private:
    struct State {
        std::vector<TokenLock> locks;
        Amount interest_balance;
        uint64_t epoch = 1;
        std::map<Address, Amount> claimed;
    };

    PoolParams params_;
    State state_;
    std::optional<State> snapshot_;
};

} // namespace amr
