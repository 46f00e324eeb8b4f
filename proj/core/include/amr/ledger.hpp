#pragma once

#include <optional>
#include <map>
#include <variant>
#include <vector>

#include "amr/amount.hpp"
#include "amr/zkrel.hpp"

namespace amr {

/// Account identifier: extract_pk(sk) for externally-owned accounts,
/// reserved constants for contract accounts (which never sign).
using Address = FieldElement;
using Height = uint64_t;

Address amr_contract_address();
Address pool_address();
Address lending_address();
Address fee_sink_address();

enum class TxKind { Deposit, Withdraw, Redeem, Lock, Claim, Unlock, Transfer };
const char* tx_kind_name(TxKind kind);

enum class Asset { Coin, GovToken };

struct DepositPayload {
    Amount amount;
    FieldElement cm;
};
struct WithdrawPayload {
    FieldElement sn;
    FieldElement root;
    Proof proof;
};
struct RedeemPayload {
    FieldElement sn;
    FieldElement root;
    Proof proof;
    FieldElement cm_new;
};
struct LockPayload {
    Amount gamma;
    uint64_t t_lock = 0;
};
struct ClaimPayload {};
struct UnlockPayload {};
struct TransferPayload {
    Address to;
    Amount amount;
    Asset asset = Asset::Coin;
};

using Payload = std::variant<DepositPayload, WithdrawPayload, RedeemPayload, LockPayload,
                             ClaimPayload, UnlockPayload, TransferPayload>;

struct Tx {
    Address sender;
    TxKind kind = TxKind::Transfer;
    Payload payload;
    Amount fee;
    FieldElement signature; // h_p(kSig || sk || tx digest)
};

/// Execution outcome of one transaction within a block. Reverted entries
/// consumed their fee but left every other piece of state untouched.
struct ExecRecord {
    Height height = 0;
    uint32_t seq = 0;
    TxKind kind = TxKind::Transfer;
    Address sender;
    bool ok = false;
    std::optional<Err> error;
    FieldElement contract_digest;
};

struct Block {
    Height height = 0;
    std::vector<Tx> txs;
    std::vector<ExecRecord> records;
};

struct OrderingPolicy {
    enum class Kind { FIFO, AdversaryFirst, Custom };
    Kind kind = Kind::FIFO;
    // Custom: permutation applied to the mempool of the block mined at a
    // given height; missing heights fall back to FIFO.
    std::map<Height, std::vector<size_t>> permutations;

    static OrderingPolicy fifo() { return {}; }
    static OrderingPolicy adversary_first() { return {Kind::AdversaryFirst, {}}; }
};

struct Account {
    Bytes sk; // empty for contract accounts
    Amount coins;
    Amount gov;
    bool adversary = false;
};

/// Handler surface the chain dispatches contract-bound transactions to.
/// Implementations must throw amr::Error to revert; the chain guarantees
/// snapshot/rollback around every transaction.
class ContractRegistry {
  public:
    virtual ~ContractRegistry() = default;
    virtual void apply(const Tx& tx, Height height, class Chain& chain) = 0;
    virtual FieldElement state_digest() const = 0;
    virtual void snapshot() = 0;
    virtual void rollback() = 0;
    virtual void discard_snapshot() = 0;
};

/// Deterministic single-owner blockchain simulation: accounts, a mempool,
/// block mining with a pluggable intra-block ordering policy, and explicit
/// interest/reward minting so conservation is auditable per block.
class Chain {
  public:
    explicit Chain(HashKind kind, OrderingPolicy policy = OrderingPolicy::fifo());

    HashKind hash_kind() const { return kind_; }
    Height height() const { return height_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    const std::vector<Tx>& mempool() const { return mempool_; }

    void set_policy(OrderingPolicy policy) { policy_ = std::move(policy); }
    const OrderingPolicy& policy() const { return policy_; }

    Address create_account(const Bytes& sk, Amount coins, bool adversary = false);
    bool has_account(const Address& addr) const;
    const Account& account(const Address& addr) const;
    Amount balance(const Address& addr, Asset asset = Asset::Coin) const;
    bool is_adversary(const Address& addr) const;

    /// Queue a signed transaction. Checks the signature and that the sender
    /// can cover the declared value plus fee at submission time.
    void submit(const Tx& tx); // BadSignature, InsufficientBalance

    /// Drain the mempool in policy order, dispatch each transaction, and
    /// append the block. Failed transactions are included but marked
    /// reverted; they consume the fee and nothing else.
    Block& mine_block(ContractRegistry* registry);

    // Value-movement primitives used by contract handlers.
    void transfer(const Address& from, const Address& to, Amount amount, Asset asset);
    void mint(const Address& to, Amount amount, Asset asset);

    Amount total_supply(Asset asset) const; // sum over all accounts
    Amount initial_supply(Asset asset) const;
    Amount minted(Asset asset) const;

    // Signature plumbing (shared with the client module).
    FieldElement tx_digest(const Tx& tx) const;
    FieldElement sign_digest(const Bytes& sk, const FieldElement& digest) const;
    Tx make_tx(const Bytes& sk, TxKind kind, Payload payload, Amount fee) const;
    bool check_signature(const Tx& tx) const;

    /// Digest over balances and the registry digest; used by revert audits.
    FieldElement world_digest(const ContractRegistry* registry) const;

  private:
    std::vector<size_t> execution_order(Height height) const;

    HashKind kind_;
    OrderingPolicy policy_;
    Height height_ = 0;
    std::vector<Block> blocks_;
    std::vector<Tx> mempool_;
    std::map<Address, Account> accounts_;
    Amount initial_coins_, initial_gov_;
    Amount minted_coins_, minted_gov_;
};

Bytes payload_bytes(TxKind kind, const Payload& payload);

} // namespace amr
