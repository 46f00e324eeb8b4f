#include "amr/world.hpp"

namespace amr {

void AmrWorld::apply(const Tx& tx, Height height, Chain& chain) {
    Height adopted_before = contract_.root_rwd_curr().adopted_at;
    switch (tx.kind) {
        case TxKind::Deposit:
            contract_.accept_deposit(std::get<DepositPayload>(tx.payload), tx.sender, height,
                                     chain);
            break;
        case TxKind::Withdraw:
            contract_.issue_withdraw(std::get<WithdrawPayload>(tx.payload), tx.sender, height,
                                     chain, *this);
            break;
        case TxKind::Redeem:
            contract_.issue_reward(std::get<RedeemPayload>(tx.payload), tx.sender, height, chain);
            break;
        case TxKind::Lock: {
            const auto& p = std::get<LockPayload>(tx.payload);
            pool_.create_lock(tx.sender, p.gamma, p.t_lock, height, chain);
            break;
        }
        case TxKind::Claim:
            pool_.claim(tx.sender, height, chain);
            break;
        case TxKind::Unlock:
            pool_.unlock(tx.sender, height, chain);
            break;
        case TxKind::Transfer:
            throw Error(Err::ConfigError, "transfers are handled by the chain itself");
    }
    if (contract_.root_rwd_curr().adopted_at != adopted_before)
        adoption_history_.push_back(contract_.root_rwd_curr());
}

FieldElement AmrWorld::state_digest() const {
    HashKind kind = contract_.params().kind;
    Bytes buf;
    buf.push_back(domain::kTx);
    auto c = contract_.state_digest().to_bytes();
    buf.insert(buf.end(), c.begin(), c.end());
    auto p = pool_.state_digest(kind).to_bytes();
    buf.insert(buf.end(), p.begin(), p.end());
    return h_p(kind, buf);
}

void AmrWorld::snapshot() {
    contract_.take_snapshot();
    pool_.take_snapshot();
    history_snapshot_size_ = adoption_history_.size();
}

void AmrWorld::rollback() {
    contract_.rollback();
    pool_.rollback();
    adoption_history_.resize(history_snapshot_size_);
}

void AmrWorld::discard_snapshot() {
    contract_.discard_snapshot();
    pool_.discard_snapshot();
}

} // namespace amr
