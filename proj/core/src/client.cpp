#include "amr/client.hpp"

namespace amr {

Wallet::Wallet(HashKind kind, unsigned depth, std::mt19937_64* rng)
    : kind_(kind), depth_(depth), rng_(rng),
      full_mirror_(depth, kind), prefix_mirror_(depth, kind) {}

Bytes Wallet::random_bytes32() {
    Bytes b(32);
    for (auto& x : b) x = (uint8_t)(*rng_)();
    return b;
}

Bytes Wallet::new_key() { return random_bytes32(); }

const WalletNote& Wallet::note(size_t id) const {
    if (id >= notes_.size()) throw Error(Err::NoteNotFound, "unknown note id");
    return notes_[id];
}

WalletNote& Wallet::note_mut(size_t id) {
    if (id >= notes_.size()) throw Error(Err::NoteNotFound, "unknown note id");
    return notes_[id];
}

std::vector<size_t> Wallet::live_notes() const {
    std::vector<size_t> ids;
    for (size_t i = 0; i < notes_.size(); ++i)
        if (notes_[i].status == NoteStatus::Live) ids.push_back(i);
    return ids;
}

void Wallet::mark_nullified(size_t id) {
    WalletNote& n = note_mut(id);
    if (n.status != NoteStatus::Live)
        throw Error(Err::DoubleSpend, "note already nullified in wallet");
    n.status = NoteStatus::Nullified;
}

void Wallet::discard_note(size_t id) {
    WalletNote& n = note_mut(id);
    if (n.status != NoteStatus::Live)
        throw Error(Err::DoubleSpend, "cannot discard a spent note");
    n.status = NoteStatus::Discarded;
}

void Wallet::record_leaf_index(size_t id, uint64_t leaf_index) {
    note_mut(id).leaf_index = leaf_index;
}

std::optional<uint64_t> Wallet::locate(const WalletNote& n, const std::vector<FieldElement>& list,
                                       uint64_t limit) const {
    uint64_t end = std::min<uint64_t>(limit, list.size());
    if (n.leaf_index && *n.leaf_index < end && list[*n.leaf_index] == n.cm) return n.leaf_index;
    for (uint64_t i = 0; i < end; ++i)
        if (list[i] == n.cm) return i;
    return std::nullopt;
}

void Wallet::sync_mirror(MerkleTree& mirror, uint64_t& synced,
                         const std::vector<FieldElement>& list, uint64_t upto) {
    if (synced > upto) {
        // The covered prefix never shrinks while a contract instance lives;
        // a shorter target means the caller switched contracts.
        throw Error(Err::ConfigError, "snapshot DepositList shrank");
    }
    for (uint64_t i = synced; i < upto; ++i) mirror.update(i, list[i]);
    synced = upto;
}

Wallet::DepositTx Wallet::create_deposit_tx(const Chain& chain, const Bytes& sk, Amount amt,
                                            Amount fee) {
    SecretNote secret{random_bytes32(), random_bytes32()};
    FieldElement cm = commit(kind_, secret.k_dep, secret.r);
    notes_.push_back(WalletNote{secret, cm, NoteStatus::Live, std::nullopt});
    Tx tx = chain.make_tx(sk, TxKind::Deposit, DepositPayload{amt, cm}, fee);
    return DepositTx{notes_.size() - 1, tx};
}

Tx Wallet::create_withdraw_tx(const Chain& chain, const ProvingKey& ek, const Bytes& sk,
                              size_t note_id, const ContractSnapshot& snap, Amount fee) {
    const WalletNote& n = note(note_id);
    if (n.status != NoteStatus::Live)
        throw Error(Err::DoubleSpend, "note already nullified in wallet");

    auto idx = locate(n, snap.deposit_list, snap.deposit_list.size());
    if (!idx) throw Error(Err::NoteNotFound, "commitment not in the snapshot DepositList");

    // Newest listed root: freshest state, so the proof survives the most
    // intervening deposits before falling off the ring buffer.
    sync_mirror(full_mirror_, full_synced_, snap.deposit_list, snap.deposit_list.size());
    FieldElement root = snap.root_list.back();

    MerklePath path = full_mirror_.prove(*idx);
    Statement st{extract_pk(kind_, sk), nullifier(kind_, n.secret.k_dep), root};
    Proof proof = zk_prove(ek, st, Witness{sk, n.secret.k_dep, n.secret.r, n.cm, path});
    return chain.make_tx(sk, TxKind::Withdraw, WithdrawPayload{st.sn, root, proof}, fee);
}

Wallet::RedeemTx Wallet::create_redeem_tx(const Chain& chain, const ProvingKey& ek,
                                          const Bytes& sk, size_t note_id,
                                          const ContractSnapshot& snap, Amount fee) {
    const WalletNote& n = note(note_id);
    if (n.status != NoteStatus::Live)
        throw Error(Err::DoubleSpend, "note already nullified in wallet");

    uint64_t prefix = snap.root_rwd_curr.deposit_prefix;
    auto idx = locate(n, snap.deposit_list, prefix);
    if (!idx) {
        if (locate(n, snap.deposit_list, snap.deposit_list.size()))
            throw Error(Err::NoteTooYoung, "commitment not yet under the current reward root");
        throw Error(Err::NoteNotFound, "commitment not in the snapshot DepositList");
    }

    sync_mirror(prefix_mirror_, prefix_synced_, snap.deposit_list, prefix);
    if (prefix_mirror_.root() != snap.root_rwd_curr.root)
        throw Error(Err::ConfigError, "snapshot reward root does not match its DepositList prefix");

    MerklePath path = prefix_mirror_.prove(*idx);
    Statement st{extract_pk(kind_, sk), nullifier(kind_, n.secret.k_dep),
                 snap.root_rwd_curr.root};
    Proof proof = zk_prove(ek, st, Witness{sk, n.secret.k_dep, n.secret.r, n.cm, path});

    // Refresh note sampled only once the proof exists, so a failed attempt
    // leaves no stray wallet entry behind.
    SecretNote fresh{random_bytes32(), random_bytes32()};
    FieldElement cm_new = commit(kind_, fresh.k_dep, fresh.r);
    notes_.push_back(WalletNote{fresh, cm_new, NoteStatus::Live, std::nullopt});

    Tx tx = chain.make_tx(sk, TxKind::Redeem,
                          RedeemPayload{st.sn, st.root, proof, cm_new}, fee);
    return RedeemTx{notes_.size() - 1, tx};
}

Tx Wallet::create_lock_tx(const Chain& chain, const Bytes& sk, Amount gamma, Height t_lock,
                          Amount fee) {
    if (gamma.is_zero()) throw Error(Err::ZeroAmount, "cannot lock zero tokens");
    return chain.make_tx(sk, TxKind::Lock, LockPayload{gamma, t_lock}, fee);
}

Tx Wallet::create_claim_tx(const Chain& chain, const Bytes& sk, Amount fee) {
    return chain.make_tx(sk, TxKind::Claim, ClaimPayload{}, fee);
}

Tx Wallet::create_unlock_tx(const Chain& chain, const Bytes& sk, Amount fee) {
    return chain.make_tx(sk, TxKind::Unlock, UnlockPayload{}, fee);
}

Tx Wallet::create_transfer_tx(const Chain& chain, const Bytes& sk, const Address& to,
                              Amount amount, Asset asset, Amount fee) {
    return chain.make_tx(sk, TxKind::Transfer, TransferPayload{to, amount, asset}, fee);
}

} // namespace amr
