#include "amr/contract.hpp"

namespace amr {

namespace {

void put_u64(Bytes& buf, uint64_t v) {
    for (int i = 7; i >= 0; --i) buf.push_back((uint8_t)(v >> (8 * i)));
}

void put_u128(Bytes& buf, u128 v) {
    put_u64(buf, (uint64_t)(v >> 64));
    put_u64(buf, (uint64_t)v);
}

void put_fe(Bytes& buf, const FieldElement& x) {
    auto b = x.to_bytes();
    buf.insert(buf.end(), b.begin(), b.end());
}

} // namespace

AmrContract::AmrContract(AmrParams params, std::mt19937_64& rng)
    : params_(params),
      state_(params.depth, params.kind, params.rate_per_block) {
    if (params.amt.is_zero()) throw Error(Err::BadConfig, "deposit denomination must be positive");
    if (params.amt_rwd.is_zero()) throw Error(Err::BadConfig, "reward amount must be positive");
    if (params.t_con == 0) throw Error(Err::BadConfig, "t_con must be positive");
    if (params.k == 0) throw Error(Err::BadConfig, "root-list length must be positive");

    auto keys = zk_setup(CircuitDesc{params.kind, params.depth}, rng);
    ek_ = keys.first;
    vk_ = keys.second;

    FieldElement empty = state_.tree.root();
    state_.root_list.assign(params.k, empty);
    state_.root_rwd_curr = RewardRoot{empty, 0, 0, 0};
    state_.root_rwd_next = RewardRoot{empty, 0, 0, 0};
}

void AmrContract::accrue_lending(Height height, Chain& chain) {
    if (height <= state_.lending_accrued_to) return;
    Amount minted = state_.lending.accrue(height - state_.lending_accrued_to);
    state_.lending_accrued_to = height;
    if (!minted.is_zero()) chain.mint(lending_address(), minted, Asset::Coin);
}

void AmrContract::insert_commitment(const FieldElement& cm, Height height) {
    state_.deposit_list.push_back(cm);
    uint64_t leaf = state_.index - 1; // index counts from 1, leaves from 0
    FieldElement root_new = state_.tree.update(leaf, cm);
    state_.index += 1;

    if (state_.root_list.size() == params_.k) state_.root_list.erase(state_.root_list.begin());
    state_.root_list.push_back(root_new);

    // Reward-root rotation: once the pending anchor is old enough it
    // becomes current, and the fresh root starts waiting.
    if (height - state_.root_rwd_next.blockheight >= params_.t_con) {
        state_.root_rwd_curr = state_.root_rwd_next;
        state_.root_rwd_curr.adopted_at = height;
        state_.root_rwd_next =
            RewardRoot{root_new, height, 0, state_.deposit_list.size()};
    }
}

void AmrContract::accept_deposit(const DepositPayload& payload, const Address& sender,
                                 Height height, Chain& chain) {
    if (payload.amount != params_.amt)
        throw Error(Err::WrongDenomination, "deposit must be exactly the fixed denomination");
    if (state_.index >= (uint64_t(1) << params_.depth))
        throw Error(Err::TreeFull, "deposit tree is full");

    chain.transfer(sender, amr_contract_address(), params_.amt, Asset::Coin);

    accrue_lending(height, chain);
    u128 shares = state_.lending.deposit(params_.amt);
    chain.transfer(amr_contract_address(), lending_address(), params_.amt, Asset::Coin);
    state_.share_balance += shares;

    insert_commitment(payload.cm, height);
}

void AmrContract::issue_withdraw(const WithdrawPayload& payload, const Address& sender,
                                 Height height, Chain& chain, InterestSink& pool) {
    bool root_known = false;
    for (const auto& r : state_.root_list) root_known = root_known || r == payload.root;
    if (!root_known) throw Error(Err::StaleRoot, "root not among the k most recent roots");
    if (state_.nullifier_list.count(payload.sn))
        throw Error(Err::DoubleSpend, "nullifier already used");
    if (!zk_verify(vk_, Statement{sender, payload.sn, payload.root}, payload.proof))
        throw Error(Err::BadProof, "withdraw proof rejected");

    uint64_t outstanding = deposits_outstanding();
    if (outstanding == 0) throw Error(Err::BadProof, "no deposits outstanding");

    // Full exit from the lending position.
    accrue_lending(height, chain);
    Amount received = state_.lending.redeem(state_.share_balance);
    state_.share_balance = 0;
    chain.transfer(lending_address(), amr_contract_address(), received, Asset::Coin);

    Amount balance = Amount::from_raw(params_.amt.raw * outstanding);
    Amount interest = received > balance ? received - balance : Amount{};
    Amount pool_share = Amount::from_raw(interest.raw / outstanding);

    state_.nullifier_list.insert(payload.sn);

    if (!pool_share.is_zero())
        chain.transfer(amr_contract_address(), pool_address(), pool_share, Asset::Coin);
    pool.receive_interest(pool_share, height);

    chain.transfer(amr_contract_address(), sender, params_.amt, Asset::Coin);

    Amount redeposit = received - params_.amt - pool_share;
    if (!redeposit.is_zero()) {
        state_.share_balance += state_.lending.deposit(redeposit);
        chain.transfer(amr_contract_address(), lending_address(), redeposit, Asset::Coin);
    }
}

void AmrContract::issue_reward(const RedeemPayload& payload, const Address& sender, Height height,
                               Chain& chain) {
    if (payload.root != state_.root_rwd_curr.root)
        throw Error(Err::WrongRewardRoot, "redeem must target the current reward root");
    if (state_.nullifier_list.count(payload.sn))
        throw Error(Err::DoubleSpend, "nullifier already used");
    if (!zk_verify(vk_, Statement{sender, payload.sn, payload.root}, payload.proof))
        throw Error(Err::BadProof, "redeem proof rejected");
    if (state_.index >= (uint64_t(1) << params_.depth))
        throw Error(Err::TreeFull, "deposit tree is full");

    state_.nullifier_list.insert(payload.sn);
    insert_commitment(payload.cm_new, height);

    chain.mint(sender, params_.amt_rwd, Asset::GovToken);
}

ContractSnapshot AmrContract::snapshot_view(Height height) const {
    ContractSnapshot snap;
    snap.height = height;
    snap.params = params_;
    snap.deposit_list = state_.deposit_list;
    snap.root_list = state_.root_list;
    snap.root_rwd_curr = state_.root_rwd_curr;
    snap.root_rwd_next = state_.root_rwd_next;
    snap.next_index = state_.index;
    return snap;
}

FieldElement AmrContract::state_digest() const {
    Bytes buf;
    buf.push_back(domain::kTx);
    put_u64(buf, state_.index);
    put_u64(buf, state_.deposit_list.size());
    for (const auto& cm : state_.deposit_list) put_fe(buf, cm);
    put_u64(buf, state_.nullifier_list.size());
    for (const auto& sn : state_.nullifier_list) put_fe(buf, sn);
    for (const auto& r : state_.root_list) put_fe(buf, r);
    put_fe(buf, state_.root_rwd_curr.root);
    put_u64(buf, state_.root_rwd_curr.blockheight);
    put_u64(buf, state_.root_rwd_curr.adopted_at);
    put_u64(buf, state_.root_rwd_curr.deposit_prefix);
    put_fe(buf, state_.root_rwd_next.root);
    put_u64(buf, state_.root_rwd_next.blockheight);
    put_u64(buf, state_.root_rwd_next.deposit_prefix);
    put_u128(buf, state_.share_balance);
    put_u128(buf, state_.lending.exchange_rate().raw);
    put_u128(buf, state_.lending.total_underlying().raw);
    put_u128(buf, state_.lending.minted_total().raw);
    put_u64(buf, state_.lending_accrued_to);
    return h_p(params_.kind, buf);
}

void AmrContract::take_snapshot() { snapshot_ = state_; }

void AmrContract::rollback() {
    if (!snapshot_) throw Error(Err::ConfigError, "rollback without snapshot");
    state_ = std::move(*snapshot_);
    snapshot_.reset();
}

void AmrContract::discard_snapshot() { snapshot_.reset(); }

} // namespace amr
