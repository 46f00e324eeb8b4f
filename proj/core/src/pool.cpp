#include "amr/pool.hpp"

namespace amr {

namespace {

void put_u64(Bytes& buf, uint64_t v) {
    for (int i = 7; i >= 0; --i) buf.push_back((uint8_t)(v >> (8 * i)));
}

void put_amount(Bytes& buf, Amount a) {
    put_u64(buf, (uint64_t)(a.raw >> 64));
    put_u64(buf, (uint64_t)a.raw);
}

} // namespace

RewardPool::RewardPool(PoolParams params) : params_(params) {
    if (params.t_max == 0) throw Error(Err::BadConfig, "t_max must be positive");
}

Amount RewardPool::claimed_total(const Address& addr) const {
    auto it = state_.claimed.find(addr);
    return it == state_.claimed.end() ? Amount{} : it->second;
}

void RewardPool::create_lock(const Address& owner, Amount gamma, Height t_lock, Height height,
                             Chain& chain) {
    if (gamma.is_zero()) throw Error(Err::ZeroAmount, "cannot lock zero tokens");
    if (t_lock == 0 || t_lock > params_.t_max)
        throw Error(Err::BadDuration, "lock duration must be in (0, t_max]");
    if (chain.balance(owner, Asset::GovToken) < gamma)
        throw Error(Err::InsufficientTokens, "not enough governance tokens to lock");
    chain.transfer(owner, pool_address(), gamma, Asset::GovToken);
    state_.locks.push_back(TokenLock{owner, gamma, height + t_lock, t_lock, 0});
}

Amount RewardPool::voting_weight(const TokenLock& lock, Height height) const {
    Height left = lock.unlock_height > height ? lock.unlock_height - height : 0;
    return Amount::from_raw(mul_div_floor(lock.gamma.raw, left, params_.t_max));
}

Amount RewardPool::weight_of(const Address& addr, Height height) const {
    Amount w;
    for (const auto& lock : state_.locks)
        if (lock.owner == addr) w = w + voting_weight(lock, height);
    return w;
}

void RewardPool::receive_interest(Amount amount, Height) {
    if (amount.is_zero()) return;
    state_.interest_balance = state_.interest_balance + amount;
    state_.epoch += 1; // new interest reopens claims for everyone
}

Amount RewardPool::claim(const Address& addr, Height height, Chain& chain) {
    bool has_lock = false;
    Amount w, total;
    for (const auto& lock : state_.locks) {
        if (lock.owner == addr) has_lock = true;
        if (lock.claimed_epoch == state_.epoch) continue; // share already taken
        Amount weight = voting_weight(lock, height);
        total = total + weight;
        if (lock.owner == addr) w = w + weight;
    }
    if (!has_lock) throw Error(Err::NoLock, "claimer holds no lock");
    if (total.is_zero()) throw Error(Err::ZeroTotalWeight, "no unclaimed voting weight left");

    Amount payout = Amount::from_raw(
        mul_div_floor(state_.interest_balance.raw, w.raw, total.raw));
    for (auto& lock : state_.locks)
        if (lock.owner == addr) lock.claimed_epoch = state_.epoch;
    state_.interest_balance = state_.interest_balance - payout;
    if (!payout.is_zero()) chain.transfer(pool_address(), addr, payout, Asset::Coin);
    auto [it, _] = state_.claimed.try_emplace(addr, Amount{});
    it->second = it->second + payout;
    return payout;
}

Amount RewardPool::unlock(const Address& addr, Height height, Chain& chain) {
    bool has_lock = false;
    Amount released;
    std::vector<TokenLock> kept;
    kept.reserve(state_.locks.size());
    for (const auto& lock : state_.locks) {
        if (lock.owner != addr) {
            kept.push_back(lock);
            continue;
        }
        has_lock = true;
        if (lock.unlock_height <= height) {
            released = released + lock.gamma;
        } else {
            kept.push_back(lock);
        }
    }
    if (!has_lock) throw Error(Err::NoLock, "nothing locked for this address");
    state_.locks = std::move(kept);
    if (!released.is_zero()) chain.transfer(pool_address(), addr, released, Asset::GovToken);
    return released;
}

FieldElement RewardPool::state_digest(HashKind kind) const {
    Bytes buf;
    buf.push_back(domain::kTx);
    put_u64(buf, params_.t_max);
    put_u64(buf, state_.epoch);
    put_amount(buf, state_.interest_balance);
    put_u64(buf, state_.locks.size());
    for (const auto& lock : state_.locks) {
        auto owner = lock.owner.to_bytes();
        buf.insert(buf.end(), owner.begin(), owner.end());
        put_amount(buf, lock.gamma);
        put_u64(buf, lock.unlock_height);
        put_u64(buf, lock.t_lock);
        put_u64(buf, lock.claimed_epoch);
    }
    for (const auto& [addr, total] : state_.claimed) {
        auto a = addr.to_bytes();
        buf.insert(buf.end(), a.begin(), a.end());
        put_amount(buf, total);
    }
    return h_p(kind, buf);
}

void RewardPool::take_snapshot() { snapshot_ = state_; }

void RewardPool::rollback() {
    if (!snapshot_) throw Error(Err::ConfigError, "rollback without snapshot");
    state_ = std::move(*snapshot_);
    snapshot_.reset();
}

void RewardPool::discard_snapshot() { snapshot_.reset(); }

} // namespace amr
