#pragma once

#include "amr/amount.hpp"

namespace amr {

/// Share-based lending pool: depositing mints shares at the current
/// underlying-per-share exchange rate, the rate compounds per block, and
/// redeeming pays shares x rate back. Interest enters as explicitly minted
/// coins so the ledger's conservation audit can account for it exactly.
class LendingModel {
  public:
    explicit LendingModel(Amount rate_per_block = Amount::from_raw(Amount::kScale));

    /// Compounds the exchange rate by rate_per_block^blocks_elapsed. The
    /// power is evaluated exactly over big integers and floored once, so the
    /// result matches an exact oracle to within one raw unit per call.
    /// Returns the interest minted into the pool.
    Amount accrue(uint64_t blocks_elapsed);

    /// Coins in, floor(amt / rate) shares out.
    u128 deposit(Amount amt); // throws ZeroAmount
    /// Shares in, floor(shares x rate) coins out. Redeeming every
    /// outstanding share drains the pool exactly, dust included.
    Amount redeem(u128 shares); // throws InsufficientShares

    Amount exchange_rate() const { return exchange_rate_; }
    Amount rate_per_block() const { return rate_per_block_; }
    u128 total_shares() const { return total_shares_; }
    Amount total_underlying() const { return total_underlying_; }
    Amount minted_total() const { return minted_total_; }

    /// Redeemable value of `shares` at the current rate (no state change).
    Amount value_of(u128 shares) const;

  private:
    Amount rate_per_block_;
    Amount exchange_rate_;
    u128 total_shares_ = 0;
    Amount total_underlying_;
    Amount minted_total_;
};

} // namespace amr
