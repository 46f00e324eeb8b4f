#include "amr/ledger.hpp"

#include <algorithm>

namespace amr {

namespace {

void put_u64(Bytes& buf, uint64_t v) {
    for (int i = 7; i >= 0; --i) buf.push_back((uint8_t)(v >> (8 * i)));
}

void put_amount(Bytes& buf, Amount a) {
    put_u64(buf, (uint64_t)(a.raw >> 64));
    put_u64(buf, (uint64_t)a.raw);
}

void put_fe(Bytes& buf, const FieldElement& x) {
    auto b = x.to_bytes();
    buf.insert(buf.end(), b.begin(), b.end());
}

} // namespace

Address amr_contract_address() { return FieldElement::from_u64(0xA1); }
Address pool_address() { return FieldElement::from_u64(0xA2); }
Address lending_address() { return FieldElement::from_u64(0xA3); }
Address fee_sink_address() { return FieldElement::from_u64(0xFE); }

const char* tx_kind_name(TxKind kind) {
    switch (kind) {
        case TxKind::Deposit: return "deposit";
        case TxKind::Withdraw: return "withdraw";
        case TxKind::Redeem: return "redeem";
        case TxKind::Lock: return "lock";
        case TxKind::Claim: return "claim";
        case TxKind::Unlock: return "unlock";
        case TxKind::Transfer: return "transfer";
    }
    return "?";
}

Bytes payload_bytes(TxKind kind, const Payload& payload) {
    Bytes buf;
    buf.push_back((uint8_t)kind);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, DepositPayload>) {
                put_amount(buf, p.amount);
                put_fe(buf, p.cm);
            } else if constexpr (std::is_same_v<T, WithdrawPayload>) {
                put_fe(buf, p.sn);
                put_fe(buf, p.root);
                put_fe(buf, p.proof.tag);
            } else if constexpr (std::is_same_v<T, RedeemPayload>) {
                put_fe(buf, p.sn);
                put_fe(buf, p.root);
                put_fe(buf, p.proof.tag);
                put_fe(buf, p.cm_new);
            } else if constexpr (std::is_same_v<T, LockPayload>) {
                put_amount(buf, p.gamma);
                put_u64(buf, p.t_lock);
            } else if constexpr (std::is_same_v<T, TransferPayload>) {
                put_fe(buf, p.to);
                put_amount(buf, p.amount);
                buf.push_back((uint8_t)p.asset);
            } else {
                // Claim/Unlock carry no fields beyond the kind byte.
            }
        },
        payload);
    return buf;
}

Chain::Chain(HashKind kind, OrderingPolicy policy) : kind_(kind), policy_(std::move(policy)) {
    for (const Address& addr :
         {amr_contract_address(), pool_address(), lending_address(), fee_sink_address()}) {
        accounts_.emplace(addr, Account{});
    }
}

Address Chain::create_account(const Bytes& sk, Amount coins, bool adversary) {
    Address addr = extract_pk(kind_, sk);
    if (accounts_.count(addr)) throw Error(Err::ConfigError, "account already exists");
    accounts_.emplace(addr, Account{sk, coins, Amount{}, adversary});
    initial_coins_ = initial_coins_ + coins;
    return addr;
}

bool Chain::has_account(const Address& addr) const { return accounts_.count(addr) != 0; }

const Account& Chain::account(const Address& addr) const {
    auto it = accounts_.find(addr);
    if (it == accounts_.end()) throw Error(Err::ConfigError, "unknown account");
    return it->second;
}

Amount Chain::balance(const Address& addr, Asset asset) const {
    const Account& acc = account(addr);
    return asset == Asset::Coin ? acc.coins : acc.gov;
}

bool Chain::is_adversary(const Address& addr) const { return account(addr).adversary; }

FieldElement Chain::tx_digest(const Tx& tx) const {
    Bytes buf;
    buf.push_back(domain::kTx);
    put_fe(buf, tx.sender);
    Bytes body = payload_bytes(tx.kind, tx.payload);
    buf.insert(buf.end(), body.begin(), body.end());
    put_amount(buf, tx.fee);
    return h_p(kind_, buf);
}

FieldElement Chain::sign_digest(const Bytes& sk, const FieldElement& digest) const {
    Bytes buf;
    buf.push_back(domain::kSig);
    buf.insert(buf.end(), sk.begin(), sk.end());
    put_fe(buf, digest);
    return h_p(kind_, buf);
}

Tx Chain::make_tx(const Bytes& sk, TxKind kind, Payload payload, Amount fee) const {
    Tx tx{extract_pk(kind_, sk), kind, std::move(payload), fee, FieldElement::zero()};
    tx.signature = sign_digest(sk, tx_digest(tx));
    return tx;
}

bool Chain::check_signature(const Tx& tx) const {
    auto it = accounts_.find(tx.sender);
    if (it == accounts_.end() || it->second.sk.empty()) return false;
    return tx.signature == sign_digest(it->second.sk, tx_digest(tx));
}

void Chain::submit(const Tx& tx) {
    if (!check_signature(tx)) throw Error(Err::BadSignature, "transaction signature invalid");

    Amount need_coins = tx.fee;
    Amount need_gov;
    if (const auto* dep = std::get_if<DepositPayload>(&tx.payload))
        need_coins = need_coins + dep->amount;
    if (const auto* tr = std::get_if<TransferPayload>(&tx.payload)) {
        if (tr->asset == Asset::Coin)
            need_coins = need_coins + tr->amount;
        else
            need_gov = need_gov + tr->amount;
    }
    if (const auto* lock = std::get_if<LockPayload>(&tx.payload)) need_gov = need_gov + lock->gamma;

    const Account& acc = account(tx.sender);
    if (acc.coins < need_coins || acc.gov < need_gov)
        throw Error(Err::InsufficientBalance, "sender cannot cover value plus fee");
    mempool_.push_back(tx);
}

std::vector<size_t> Chain::execution_order(Height height) const {
    std::vector<size_t> order(mempool_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    switch (policy_.kind) {
        case OrderingPolicy::Kind::FIFO:
            break;
        case OrderingPolicy::Kind::AdversaryFirst:
            std::stable_partition(order.begin(), order.end(), [this](size_t i) {
                return is_adversary(mempool_[i].sender);
            });
            break;
        case OrderingPolicy::Kind::Custom: {
            auto it = policy_.permutations.find(height);
            if (it == policy_.permutations.end()) break;
            const auto& perm = it->second;
            if (perm.size() != order.size())
                throw Error(Err::ConfigError, "custom permutation length mismatch");
            std::vector<bool> seen(perm.size(), false);
            for (size_t i : perm) {
                if (i >= perm.size() || seen[i])
                    throw Error(Err::ConfigError, "custom permutation is not a permutation");
                seen[i] = true;
            }
            order = perm;
            break;
        }
    }
    return order;
}

Block& Chain::mine_block(ContractRegistry* registry) {
    Height height = height_ + 1;
    std::vector<size_t> order = execution_order(height);

    Block block;
    block.height = height;
    for (size_t idx : order) block.txs.push_back(mempool_[idx]);
    mempool_.clear();
    height_ = height;

    uint32_t seq = 0;
    for (const Tx& tx : block.txs) {
        ExecRecord rec;
        rec.height = height;
        rec.seq = seq++;
        rec.kind = tx.kind;
        rec.sender = tx.sender;

        Account& sender = accounts_.at(tx.sender);
        if (sender.coins < tx.fee) {
            rec.ok = false;
            rec.error = Err::InsufficientBalance;
        } else {
            // Fee is consumed up front and never rolled back.
            sender.coins = sender.coins - tx.fee;
            accounts_.at(fee_sink_address()).coins =
                accounts_.at(fee_sink_address()).coins + tx.fee;

            auto balances_snapshot = accounts_;
            Amount minted_coins_snapshot = minted_coins_;
            Amount minted_gov_snapshot = minted_gov_;
            if (registry) registry->snapshot();
            try {
                if (tx.kind == TxKind::Transfer) {
                    const auto& tr = std::get<TransferPayload>(tx.payload);
                    transfer(tx.sender, tr.to, tr.amount, tr.asset);
                } else {
                    if (!registry)
                        throw Error(Err::ConfigError, "no contract registry installed");
                    registry->apply(tx, height, *this);
                }
                if (registry) registry->discard_snapshot();
                rec.ok = true;
            } catch (const Error& e) {
                accounts_ = std::move(balances_snapshot);
                minted_coins_ = minted_coins_snapshot;
                minted_gov_ = minted_gov_snapshot;
                if (registry) registry->rollback();
                rec.ok = false;
                rec.error = e.code();
            }
        }
        rec.contract_digest = registry ? registry->state_digest() : FieldElement::zero();
        block.records.push_back(rec);
    }
    blocks_.push_back(std::move(block));
    return blocks_.back();
}

void Chain::transfer(const Address& from, const Address& to, Amount amount, Asset asset) {
    Account& src = accounts_.at(from);
    auto to_it = accounts_.find(to);
    if (to_it == accounts_.end()) throw Error(Err::ConfigError, "transfer to unknown account");
    Amount& src_bal = asset == Asset::Coin ? src.coins : src.gov;
    Amount& dst_bal = asset == Asset::Coin ? to_it->second.coins : to_it->second.gov;
    if (src_bal < amount) throw Error(Err::InsufficientBalance, "transfer exceeds balance");
    src_bal = src_bal - amount;
    dst_bal = dst_bal + amount;
}

void Chain::mint(const Address& to, Amount amount, Asset asset) {
    Account& acc = accounts_.at(to);
    if (asset == Asset::Coin) {
        acc.coins = acc.coins + amount;
        minted_coins_ = minted_coins_ + amount;
    } else {
        acc.gov = acc.gov + amount;
        minted_gov_ = minted_gov_ + amount;
    }
}

Amount Chain::total_supply(Asset asset) const {
    Amount total;
    for (const auto& [addr, acc] : accounts_)
        total = total + (asset == Asset::Coin ? acc.coins : acc.gov);
    return total;
}

Amount Chain::initial_supply(Asset asset) const {
    return asset == Asset::Coin ? initial_coins_ : initial_gov_;
}

Amount Chain::minted(Asset asset) const {
    return asset == Asset::Coin ? minted_coins_ : minted_gov_;
}

FieldElement Chain::world_digest(const ContractRegistry* registry) const {
    Bytes buf;
    buf.push_back(domain::kTx);
    put_fe(buf, registry ? registry->state_digest() : FieldElement::zero());
    for (const auto& [addr, acc] : accounts_) {
        put_fe(buf, addr);
        put_amount(buf, acc.coins);
        put_amount(buf, acc.gov);
    }
    return h_p(kind_, buf);
}

} // namespace amr
