#pragma once

#include "amr/contract.hpp"

namespace amr {

/// Client-held note authorizing one future withdraw or redeem.
struct SecretNote {
    Bytes k_dep; // 32 bytes
    Bytes r;     // 32 bytes
};

enum class NoteStatus { Live, Nullified, Discarded };

struct WalletNote {
    SecretNote secret;
    FieldElement cm;
    NoteStatus status = NoteStatus::Live;
    // Insertion point, once observed on-chain (deposit order or the refresh
    // slot reported back after a successful redeem).
    std::optional<uint64_t> leaf_index;
};

/// One actor's wallet: spending keys, note lifecycle, and the client-side
/// algorithms that assemble deposit/withdraw/redeem/lock transactions
/// against a fetched contract snapshot. Paths are recomputed locally from
/// the snapshot's full DepositList; the wallet only caches the incremental
/// mirror of that public list.
class Wallet {
  public:
    Wallet(HashKind kind, unsigned depth, std::mt19937_64* rng);

    Bytes new_key();
    size_t note_count() const { return notes_.size(); }
    const WalletNote& note(size_t id) const;
    std::vector<size_t> live_notes() const;
    /// Runner feedback after a successful nullifying transaction.
    void mark_nullified(size_t id);
    /// Runner feedback after a successful redeem: where the refresh landed.
    void record_leaf_index(size_t id, uint64_t leaf_index);
    /// Runner feedback after a reverted redeem: the refresh never existed
    /// on-chain, so drop it from the wallet.
    void discard_note(size_t id);

    struct DepositTx {
        size_t note_id;
        Tx tx;
    };
    /// Deposit assembly: fresh (k_dep, r), cm = commit(k_dep, r).
    DepositTx create_deposit_tx(const Chain& chain, const Bytes& sk, Amount amt, Amount fee);

    /// Withdraw assembly: path against the newest root in the snapshot's
    /// root list. NoteNotFound, DoubleSpend (note already nullified),
    /// UnsatisfiedRelation propagated.
    Tx create_withdraw_tx(const Chain& chain, const ProvingKey& ek, const Bytes& sk,
                          size_t note_id, const ContractSnapshot& snap, Amount fee);

    struct RedeemTx {
        size_t new_note_id;
        Tx tx;
    };
    /// Redeem assembly: path against root_rwd_curr (the DepositList
    /// prefix it covers); refresh note sampled and returned.
    /// NoteTooYoung when the note is not yet under the reward root.
    RedeemTx create_redeem_tx(const Chain& chain, const ProvingKey& ek, const Bytes& sk,
                              size_t note_id, const ContractSnapshot& snap, Amount fee);

    Tx create_lock_tx(const Chain& chain, const Bytes& sk, Amount gamma, Height t_lock,
                      Amount fee); // ZeroAmount
    Tx create_claim_tx(const Chain& chain, const Bytes& sk, Amount fee);
    Tx create_unlock_tx(const Chain& chain, const Bytes& sk, Amount fee);
    Tx create_transfer_tx(const Chain& chain, const Bytes& sk, const Address& to, Amount amount,
                          Asset asset, Amount fee);

  private:
    Bytes random_bytes32();
    WalletNote& note_mut(size_t id);
    /// Locates a note's leaf position in the snapshot's DepositList,
    /// consulting the recorded index first.
    std::optional<uint64_t> locate(const WalletNote& n, const std::vector<FieldElement>& list,
                                   uint64_t limit) const;
    void sync_mirror(MerkleTree& mirror, uint64_t& synced, const std::vector<FieldElement>& list,
                     uint64_t upto);

    HashKind kind_;
    unsigned depth_;
    std::mt19937_64* rng_;
    std::vector<WalletNote> notes_;

    MerkleTree full_mirror_;
    uint64_t full_synced_ = 0;
    MerkleTree prefix_mirror_;
    uint64_t prefix_synced_ = 0;
};

} // namespace amr
