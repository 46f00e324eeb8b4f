#include "amr/scenario.hpp"

#include <deque>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "amr/privacy/monte_carlo.hpp"

namespace amr {

using nlohmann::json;

namespace {

const char* kActionNames[] = {"deposit", "withdraw", "redeem",  "lock",
                              "claim",   "unlock",   "transfer", "replay_withdraw"};

ActorAction::Kind action_kind_from_name(const std::string& name) {
    for (size_t i = 0; i < std::size(kActionNames); ++i)
        if (name == kActionNames[i]) return (ActorAction::Kind)i;
    throw Error(Err::ConfigError, "unknown action '" + name + "'");
}

Amount amount_field(const json& j, const std::string& key, Amount fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string())
        throw Error(Err::ConfigError, "field '" + key + "' must be a decimal string");
    return Amount::parse(j[key].get<std::string>());
}

uint64_t uint_field(const json& j, const std::string& key, uint64_t fallback,
                    bool required = false) {
    if (!j.contains(key)) {
        if (required) throw Error(Err::ConfigError, "missing field '" + key + "'");
        return fallback;
    }
    if (!j[key].is_number_unsigned())
        throw Error(Err::ConfigError, "field '" + key + "' must be a non-negative integer");
    return j[key].get<uint64_t>();
}

OrderingPolicy parse_ordering(const json& j) {
    if (j.is_null()) return OrderingPolicy::fifo();
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "fifo") return OrderingPolicy::fifo();
        if (s == "adversary_first") return OrderingPolicy::adversary_first();
        throw Error(Err::ConfigError, "unknown ordering policy '" + s + "'");
    }
    if (j.is_object() && j.contains("custom")) {
        OrderingPolicy policy{OrderingPolicy::Kind::Custom, {}};
        for (auto it = j["custom"].begin(); it != j["custom"].end(); ++it) {
            Height h = std::stoull(it.key());
            policy.permutations[h] = it.value().get<std::vector<size_t>>();
        }
        return policy;
    }
    throw Error(Err::ConfigError, "ordering must be a policy name or {\"custom\": {...}}");
}

std::string short_hex(const FieldElement& x) { return x.to_hex().substr(32); }

} // namespace

const char* action_kind_name(ActorAction::Kind kind) { return kActionNames[(size_t)kind]; }

void Scenario::validate() const {
    if (blocks_to_mine == 0) throw Error(Err::ConfigError, "blocks_to_mine must be positive");
    if (actors.empty()) throw Error(Err::ConfigError, "scenario needs at least one actor");
    std::set<std::string> names;
    for (const auto& actor : actors) {
        if (actor.name.empty()) throw Error(Err::ConfigError, "actor name must not be empty");
        if (!names.insert(actor.name).second)
            throw Error(Err::ConfigError, "duplicate actor name '" + actor.name + "'");
        if (actor.addresses == 0)
            throw Error(Err::ConfigError, "actor '" + actor.name + "' needs at least one address");
        for (const auto& act : actor.script) {
            if (act.height == 0 || act.height > blocks_to_mine)
                throw Error(Err::ConfigError, "action height out of range in '" + actor.name + "'");
            if (act.address >= actor.addresses)
                throw Error(Err::ConfigError, "action address index out of range in '" +
                                                  actor.name + "'");
            if (act.kind == ActorAction::Kind::Transfer) {
                bool found = false;
                for (const auto& other : actors) found = found || other.name == act.to_actor;
                if (!found)
                    throw Error(Err::ConfigError,
                                "transfer target actor '" + act.to_actor + "' not defined");
            }
        }
    }
    // surface parameter problems at validation time rather than mid-run
    if (params.amr.amt.is_zero()) throw Error(Err::ConfigError, "params.amt must be positive");
    if (params.amr.amt_rwd.is_zero())
        throw Error(Err::ConfigError, "params.amt_rwd must be positive");
    if (params.amr.t_con == 0) throw Error(Err::ConfigError, "params.t_con must be positive");
    if (params.amr.depth < 1 || params.amr.depth > 32)
        throw Error(Err::ConfigError, "params.depth must be in [1, 32]");
    if (params.amr.k == 0) throw Error(Err::ConfigError, "params.k must be positive");
    if (params.pool.t_max == 0) throw Error(Err::ConfigError, "params.t_max must be positive");
}

Scenario Scenario::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line number for the error message
        size_t line = 1;
        for (size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw Error(Err::ConfigError, "scenario JSON parse error near line " +
                                          std::to_string(line) + ": " + e.what());
    }

    Scenario sc;
    sc.seed = uint_field(j, "seed", 0, true);
    sc.blocks_to_mine = uint_field(j, "blocks_to_mine", 0, true);
    sc.ordering = parse_ordering(j.contains("ordering") ? j["ordering"] : json());

    if (!j.contains("params") || !j["params"].is_object())
        throw Error(Err::ConfigError, "missing 'params' object");
    const json& p = j["params"];
    sc.params.amr.kind = hash_kind_from_name(p.value("hash", "mimc"));
    sc.params.amr.amt = amount_field(p, "amt", Amount::from_coins(10));
    sc.params.amr.amt_rwd = amount_field(p, "amt_rwd", Amount::from_coins(1));
    sc.params.amr.t_con = uint_field(p, "t_con", 5);
    sc.params.amr.depth = (unsigned)uint_field(p, "depth", 8);
    sc.params.amr.k = (unsigned)uint_field(p, "k", 100);
    sc.params.amr.rate_per_block =
        amount_field(p, "rate_per_block", Amount::from_raw(Amount::kScale));
    sc.params.pool.t_max = uint_field(p, "t_max", 100000);
    sc.params.initial_balance = amount_field(p, "initial_balance", Amount::from_coins(100));
    if (p.contains("fees")) {
        const json& fees = p["fees"];
        auto fee = [&](const char* key, TxKind kind) {
            if (fees.contains(key)) sc.params.fees[kind] = amount_field(fees, key, Amount{});
        };
        fee("deposit", TxKind::Deposit);
        fee("withdraw", TxKind::Withdraw);
        fee("redeem", TxKind::Redeem);
        fee("lock", TxKind::Lock);
        fee("claim", TxKind::Claim);
        fee("unlock", TxKind::Unlock);
        fee("transfer", TxKind::Transfer);
    }

    if (!j.contains("actors") || !j["actors"].is_array())
        throw Error(Err::ConfigError, "missing 'actors' array");
    for (const json& ja : j["actors"]) {
        ActorSpec actor;
        actor.name = ja.value("name", "");
        std::string role = ja.value("role", "honest");
        if (role != "honest" && role != "adversary")
            throw Error(Err::ConfigError, "actor role must be 'honest' or 'adversary'");
        actor.honest = role == "honest";
        actor.addresses = (unsigned)uint_field(ja, "addresses", 1);
        if (ja.contains("link_group") && !ja["link_group"].is_null())
            actor.link_group = (uint32_t)uint_field(ja, "link_group", 0);
        for (const json& js : ja.value("script", json::array())) {
            ActorAction act;
            act.height = uint_field(js, "height", 0, true);
            if (!js.contains("action") || !js["action"].is_string())
                throw Error(Err::ConfigError, "script step missing 'action'");
            act.kind = action_kind_from_name(js["action"].get<std::string>());
            act.note = uint_field(js, "note", 0);
            act.address = uint_field(js, "address", 0);
            act.amount = amount_field(js, "amount", Amount{});
            if (js.contains("gamma")) act.amount = amount_field(js, "gamma", Amount{});
            act.t_lock = uint_field(js, "t_lock", 0);
            act.to_actor = js.value("to_actor", "");
            act.to_address = uint_field(js, "to_address", 0);
            if (js.contains("asset")) {
                std::string asset = js["asset"].get<std::string>();
                if (asset == "coin") {
                    act.asset = Asset::Coin;
                } else if (asset == "gov") {
                    act.asset = Asset::GovToken;
                } else {
                    throw Error(Err::ConfigError, "asset must be 'coin' or 'gov'");
                }
            }
            actor.script.push_back(act);
        }
        sc.actors.push_back(std::move(actor));
    }

    sc.validate();
    return sc;
}

Scenario Scenario::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Err::ConfigError, "cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return from_json_text(buf.str());
}

namespace {

struct ActorRuntime {
    const ActorSpec* spec = nullptr;
    Wallet wallet;
    std::vector<Bytes> keys;
    std::vector<Address> addresses;
    // last withdraw tx built per note, for replay scripts
    std::map<size_t, Tx> withdraw_cache;

    ActorRuntime(HashKind kind, unsigned depth, std::mt19937_64* rng)
        : wallet(kind, depth, rng) {}
};

// Submission-time bookkeeping applied once the tx executes successfully.
struct PendingEffect {
    size_t actor_idx = 0;
    TxKind kind = TxKind::Deposit;
    std::optional<size_t> spent_note;
    std::optional<size_t> new_note;
    FieldElement sn;
    FieldElement cm;     // deposit commitment or nullified note's commitment
    FieldElement cm_new; // redeem refresh
    FieldElement anchor; // redeem: the reward root the proof targeted
};

struct RunState {
    const Scenario& sc;
    Chain chain;
    AmrWorld world;
    std::vector<ActorRuntime> actors;
    std::map<std::string, std::deque<PendingEffect>> pending; // tx digest -> effects
    std::ostringstream log;
    ScenarioResult result;

    uint64_t successful_deposits = 0;
    uint64_t successful_withdraws = 0;
    std::set<std::string> seen_nullifiers;

    RunState(const Scenario& s, std::mt19937_64& rng)
        : sc(s), chain(s.params.amr.kind, s.ordering), world(s.params.amr, s.params.pool, rng) {}
};

json audit_json(const AuditReport& a) {
    return json{{"coin_conservation", a.coin_conservation},
                {"gov_conservation", a.gov_conservation},
                {"payout_bound", a.payout_bound},
                {"nullifier_single_use", a.nullifier_single_use},
                {"redeem_age", a.redeem_age},
                {"wallet_agreement", a.wallet_agreement}};
}

void log_line(RunState& rs, const json& j) { rs.log << j.dump() << "\n"; }

void fail_audit(RunState& rs, bool AuditReport::* flag, const std::string& why) {
    rs.result.audits.*flag = false;
    rs.result.audits.failures.push_back(why);
}

void run_block_audits(RunState& rs, Height height) {
    // Conservation: every coin is either initial supply or recorded mint.
    Amount total = rs.chain.total_supply(Asset::Coin);
    Amount expect = rs.chain.initial_supply(Asset::Coin) + rs.chain.minted(Asset::Coin);
    if (total != expect)
        fail_audit(rs, &AuditReport::coin_conservation,
                   "height " + std::to_string(height) + ": coins " + total.to_string() +
                       " != initial+minted " + expect.to_string());

    Amount gov_total = rs.chain.total_supply(Asset::GovToken);
    Amount gov_expect =
        Amount::from_raw(rs.sc.params.amr.amt_rwd.raw * rs.result.successful_redeems);
    if (gov_total != gov_expect)
        fail_audit(rs, &AuditReport::gov_conservation,
                   "height " + std::to_string(height) + ": gov " + gov_total.to_string() +
                       " != amt_rwd*redeems " + gov_expect.to_string());

    // No-theft: withdrawals cannot outnumber deposits, and coins paid out
    // cannot exceed coins put in plus minted interest.
    if (rs.successful_withdraws > rs.successful_deposits)
        fail_audit(rs, &AuditReport::payout_bound,
                   "height " + std::to_string(height) + ": more withdraws than deposits");
    u128 deposited = rs.sc.params.amr.amt.raw * rs.successful_deposits;
    u128 paid = rs.sc.params.amr.amt.raw * rs.successful_withdraws;
    for (const auto& actor : rs.actors)
        for (const auto& addr : actor.addresses)
            paid += rs.world.pool().claimed_total(addr).raw;
    if (paid > deposited + rs.chain.minted(Asset::Coin).raw)
        fail_audit(rs, &AuditReport::payout_bound,
                   "height " + std::to_string(height) + ": payouts exceed deposits+interest");
}

void apply_success_effect(RunState& rs, const PendingEffect& eff, Height height) {
    ActorRuntime& actor = rs.actors[eff.actor_idx];
    bool honest = actor.spec->honest;
    switch (eff.kind) {
        case TxKind::Deposit:
            ++rs.successful_deposits;
            rs.result.view.record_commitment(height, eff.cm, honest, actor.spec->link_group);
            rs.result.truth.record_commitment(eff.cm, height, honest);
            break;
        case TxKind::Withdraw: {
            ++rs.successful_withdraws;
            if (eff.spent_note &&
                actor.wallet.note(*eff.spent_note).status == NoteStatus::Live)
                actor.wallet.mark_nullified(*eff.spent_note);
            rs.result.view.record_nullifier(height, eff.sn, honest);
            rs.result.truth.record_origin(eff.sn, eff.cm);
            rs.result.reveals.push_back({eff.sn, height, false, honest});
            if (!rs.seen_nullifiers.insert(eff.sn.to_hex()).second)
                fail_audit(rs, &AuditReport::nullifier_single_use,
                           "height " + std::to_string(height) + ": nullifier reused");
            break;
        }
        case TxKind::Redeem: {
            ++rs.result.successful_redeems;
            if (eff.spent_note &&
                actor.wallet.note(*eff.spent_note).status == NoteStatus::Live)
                actor.wallet.mark_nullified(*eff.spent_note);
            if (eff.new_note) {
                uint64_t leaf = rs.world.contract().deposit_count() - 1;
                actor.wallet.record_leaf_index(*eff.new_note, leaf);
            }
            rs.result.view.record_nullifier(height, eff.sn, honest);
            rs.result.view.record_commitment(height, eff.cm_new, honest, actor.spec->link_group);
            rs.result.truth.record_origin(eff.sn, eff.cm);
            rs.result.truth.record_commitment(eff.cm_new, height, honest);
            rs.result.reveals.push_back({eff.sn, height, true, honest});
            if (!rs.seen_nullifiers.insert(eff.sn.to_hex()).second)
                fail_audit(rs, &AuditReport::nullifier_single_use,
                           "height " + std::to_string(height) + ": nullifier reused");

            // Rotation-schedule audit: the nullified note must have entered
            // the tree at least t_con blocks before its anchor was adopted.
            // Match the anchor by root value so a rotation triggered by this
            // very redeem cannot stand in for the root the proof used.
            const auto& history = rs.world.reward_root_history();
            Height adopted = 0;
            bool found = false;
            for (auto it = history.rbegin(); it != history.rend(); ++it) {
                if (it->adopted_at <= height && it->root == eff.anchor) {
                    adopted = it->adopted_at;
                    found = true;
                    break;
                }
            }
            Height inserted = rs.result.truth.insertion_height(eff.cm);
            if (!found || inserted + rs.sc.params.amr.t_con > adopted)
                fail_audit(rs, &AuditReport::redeem_age,
                           "height " + std::to_string(height) + ": redeemed note younger than "
                           "the rotation schedule permits");
            break;
        }
        default:
            break;
    }
}

void finish_audits(RunState& rs) {
    // The wallet status machine and the contract's nullifier list must agree.
    HashKind kind = rs.sc.params.amr.kind;
    for (const auto& actor : rs.actors) {
        for (size_t id = 0; id < actor.wallet.note_count(); ++id) {
            const WalletNote& n = actor.wallet.note(id);
            bool wallet_spent = n.status == NoteStatus::Nullified;
            bool chain_spent =
                rs.seen_nullifiers.count(nullifier(kind, n.secret.k_dep).to_hex()) != 0;
            if (wallet_spent != chain_spent) {
                fail_audit(rs, &AuditReport::wallet_agreement,
                           "actor " + actor.spec->name + " note " + std::to_string(id) +
                               ": wallet and contract disagree on spent status");
            }
        }
    }
}

json summary_json_of(RunState& rs) {
    json balances = json::object();
    for (const auto& actor : rs.actors) {
        for (size_t i = 0; i < actor.addresses.size(); ++i) {
            const Address& addr = actor.addresses[i];
            balances[actor.spec->name + "." + std::to_string(i)] = {
                {"coins", rs.chain.balance(addr, Asset::Coin).to_string()},
                {"gov", rs.chain.balance(addr, Asset::GovToken).to_string()},
            };
            rs.result.balances.push_back({actor.spec->name, i,
                                          rs.chain.balance(addr, Asset::Coin),
                                          rs.chain.balance(addr, Asset::GovToken)});
        }
    }

    const AmrContract& c = rs.world.contract();
    Height h = rs.chain.height();
    json privacy = {{"anom_set", rs.result.view.anom_set_size(h)},
                    {"nullifier_set", rs.result.view.nullifier_set_size(h)}};
    if (rs.result.view.anom_set_size(h) > 0)
        privacy["withdraw_bound"] = adv_bound_withdraw(rs.result.view, h);

    // Per-reveal linking report: analytic bound plus an empirical
    // uniform-guesser rate with its standard error.
    json links = json::array();
    constexpr uint64_t kTrials = 10000;
    size_t reported = 0;
    for (size_t i = 0; i < rs.result.reveals.size() && reported < 16; ++i) {
        const NullifierReveal& reveal = rs.result.reveals[i];
        if (!reveal.honest || reveal.height == 0) continue;
        Height query = reveal.height - 1;
        try {
            std::optional<Height> window =
                reveal.is_redeem ? std::optional<Height>(rs.sc.params.amr.t_con) : std::nullopt;
            double bound = reveal.is_redeem ? adv_bound_redeem(rs.result.view, query, *window)
                                            : adv_bound_withdraw(rs.result.view, query);
            LinkerResult mc = monte_carlo_linker(rs.result.view, rs.result.truth, reveal.sn,
                                                 query, window, kTrials,
                                                 rs.sc.seed ^ (0x4d43u + i));
            links.push_back({{"kind", reveal.is_redeem ? "redeem" : "withdraw"},
                             {"height", reveal.height},
                             {"bound", bound},
                             {"mc_rate", mc.rate},
                             {"mc_std_error", mc.std_error},
                             {"trials", mc.trials}});
            ++reported;
        } catch (const Error&) {
            // no honest anonymity mass in the window; nothing to report
        }
    }
    privacy["linking"] = links;

    json reverts = json::object();
    for (const auto& [name, count] : rs.result.revert_counts) reverts[name] = count;

    return json{
        {"final_height", h},
        {"contract",
         {{"deposits_outstanding", c.deposits_outstanding()},
          {"deposit_count", c.deposit_count()},
          {"nullifier_count", c.nullifier_count()},
          {"next_index", c.deposit_count() + 1},
          {"root", c.current_root().to_hex()},
          {"share_balance", u128_to_string(c.share_balance())}}},
        {"lending",
         {{"exchange_rate", c.lending().exchange_rate().to_string()},
          {"total_underlying", c.lending().total_underlying().to_string()},
          {"minted_interest", c.lending().minted_total().to_string()}}},
        {"pool",
         {{"interest_balance", rs.world.pool().interest_balance().to_string()},
          {"locks", rs.world.pool().locks().size()}}},
        {"balances", balances},
        {"counts",
         {{"deposits_ok", rs.successful_deposits},
          {"withdraws_ok", rs.successful_withdraws},
          {"redeems_ok", rs.result.successful_redeems},
          {"reverts", reverts}}},
        {"privacy", privacy},
        {"audits", audit_json(rs.result.audits)},
    };
}

void build_and_submit(RunState& rs, size_t actor_idx, const ActorAction& act) {
    ActorRuntime& actor = rs.actors[actor_idx];
    const Bytes& sk = actor.keys[act.address];
    const ScenarioParams& params = rs.sc.params;
    Height now = rs.chain.height();

    Tx tx;
    PendingEffect eff;
    eff.actor_idx = actor_idx;

    switch (act.kind) {
        case ActorAction::Kind::Deposit: {
            auto built = actor.wallet.create_deposit_tx(rs.chain, sk, params.amr.amt,
                                                        params.fee(TxKind::Deposit));
            tx = built.tx;
            eff.kind = TxKind::Deposit;
            eff.new_note = built.note_id;
            eff.cm = actor.wallet.note(built.note_id).cm;
            break;
        }
        case ActorAction::Kind::Withdraw: {
            ContractSnapshot snap = rs.world.contract().snapshot_view(now);
            tx = actor.wallet.create_withdraw_tx(rs.chain, rs.world.contract().proving_key(), sk,
                                                 act.note, snap, params.fee(TxKind::Withdraw));
            actor.withdraw_cache[act.note] = tx;
            eff.kind = TxKind::Withdraw;
            eff.spent_note = act.note;
            eff.sn = std::get<WithdrawPayload>(tx.payload).sn;
            eff.cm = actor.wallet.note(act.note).cm;
            break;
        }
        case ActorAction::Kind::ReplayWithdraw: {
            auto it = actor.withdraw_cache.find(act.note);
            if (it == actor.withdraw_cache.end())
                throw Error(Err::NoteNotFound, "no earlier withdraw tx to replay");
            tx = it->second;
            eff.kind = TxKind::Withdraw;
            eff.spent_note = act.note; // usually already spent; guarded below
            eff.sn = std::get<WithdrawPayload>(tx.payload).sn;
            eff.cm = actor.wallet.note(act.note).cm;
            break;
        }
        case ActorAction::Kind::Redeem: {
            ContractSnapshot snap = rs.world.contract().snapshot_view(now);
            auto built = actor.wallet.create_redeem_tx(rs.chain, rs.world.contract().proving_key(),
                                                       sk, act.note, snap,
                                                       params.fee(TxKind::Redeem));
            tx = built.tx;
            eff.kind = TxKind::Redeem;
            eff.spent_note = act.note;
            eff.new_note = built.new_note_id;
            eff.sn = std::get<RedeemPayload>(tx.payload).sn;
            eff.cm = actor.wallet.note(act.note).cm;
            eff.cm_new = actor.wallet.note(built.new_note_id).cm;
            eff.anchor = std::get<RedeemPayload>(tx.payload).root;
            break;
        }
        case ActorAction::Kind::Lock:
            tx = actor.wallet.create_lock_tx(rs.chain, sk, act.amount, act.t_lock,
                                             params.fee(TxKind::Lock));
            eff.kind = TxKind::Lock;
            break;
        case ActorAction::Kind::Claim:
            tx = actor.wallet.create_claim_tx(rs.chain, sk, params.fee(TxKind::Claim));
            eff.kind = TxKind::Claim;
            break;
        case ActorAction::Kind::Unlock:
            tx = actor.wallet.create_unlock_tx(rs.chain, sk, params.fee(TxKind::Unlock));
            eff.kind = TxKind::Unlock;
            break;
        case ActorAction::Kind::Transfer: {
            size_t target_idx = 0;
            for (size_t i = 0; i < rs.actors.size(); ++i)
                if (rs.actors[i].spec->name == act.to_actor) target_idx = i;
            if (act.to_address >= rs.actors[target_idx].addresses.size())
                throw Error(Err::ConfigError, "transfer target address index out of range");
            Address to = rs.actors[target_idx].addresses[act.to_address];
            tx = actor.wallet.create_transfer_tx(rs.chain, sk, to, act.amount, act.asset,
                                                 params.fee(TxKind::Transfer));
            eff.kind = TxKind::Transfer;
            break;
        }
    }

    rs.chain.submit(tx);
    rs.pending[rs.chain.tx_digest(tx).to_hex()].push_back(eff);
}

} // namespace

ScenarioResult run_scenario(const Scenario& scenario) {
    scenario.validate();
    std::mt19937_64 rng(scenario.seed);
    RunState rs(scenario, rng);
    rs.result.t_con = scenario.params.amr.t_con;

    // Actors draw keys from the shared seeded stream in declaration order.
    for (const auto& spec : scenario.actors) {
        rs.actors.emplace_back(scenario.params.amr.kind, scenario.params.amr.depth, &rng);
        ActorRuntime& actor = rs.actors.back();
        actor.spec = &spec;
        for (unsigned i = 0; i < spec.addresses; ++i) {
            Bytes sk = actor.wallet.new_key();
            actor.keys.push_back(sk);
            actor.addresses.push_back(
                rs.chain.create_account(sk, scenario.params.initial_balance, !spec.honest));
        }
    }

    json header = {
        {"type", "header"},
        {"seed", scenario.seed},
        {"hash", hash_kind_name(scenario.params.amr.kind)},
        {"ordering", scenario.ordering.kind == OrderingPolicy::Kind::FIFO ? "fifo"
                     : scenario.ordering.kind == OrderingPolicy::Kind::AdversaryFirst
                         ? "adversary_first"
                         : "custom"},
        {"blocks_to_mine", scenario.blocks_to_mine},
        {"amt", scenario.params.amr.amt.to_string()},
        {"t_con", scenario.params.amr.t_con},
        {"depth", scenario.params.amr.depth},
        {"k", scenario.params.amr.k},
    };
    log_line(rs, header);

    for (Height h = 1; h <= scenario.blocks_to_mine; ++h) {
        for (size_t a = 0; a < scenario.actors.size(); ++a) {
            for (const auto& act : scenario.actors[a].script) {
                if (act.height != h) continue;
                try {
                    build_and_submit(rs, a, act);
                } catch (const Error& e) {
                    log_line(rs, json{{"type", "client_error"},
                                      {"height", h},
                                      {"actor", scenario.actors[a].name},
                                      {"action", action_kind_name(act.kind)},
                                      {"error", err_name(e.code())}});
                }
            }
        }

        Block& block = rs.chain.mine_block(&rs.world);
        for (size_t i = 0; i < block.txs.size(); ++i) {
            const Tx& tx = block.txs[i];
            const ExecRecord& rec = block.records[i];

            std::string digest_hex = rs.chain.tx_digest(tx).to_hex();
            std::optional<PendingEffect> eff;
            auto it = rs.pending.find(digest_hex);
            if (it != rs.pending.end() && !it->second.empty()) {
                eff = it->second.front();
                it->second.pop_front();
            }

            if (rec.ok && eff) apply_success_effect(rs, *eff, h);
            if (!rec.ok && eff && eff->kind == TxKind::Redeem && eff->new_note)
                rs.actors[eff->actor_idx].wallet.discard_note(*eff->new_note);
            if (!rec.ok && rec.error)
                rs.result.revert_counts[err_name(*rec.error)] += 1;

            json line = {{"type", "tx"},
                         {"height", rec.height},
                         {"seq", rec.seq},
                         {"kind", tx_kind_name(rec.kind)},
                         {"sender", short_hex(rec.sender)},
                         {"outcome", rec.ok ? "ok" : "reverted"},
                         {"state", rec.contract_digest.to_hex().substr(48)}};
            if (!rec.ok && rec.error) line["error"] = err_name(*rec.error);
            log_line(rs, line);
        }

        run_block_audits(rs, h);
    }

    finish_audits(rs);

    rs.result.final_height = rs.chain.height();
    rs.result.deposits_outstanding = rs.world.contract().deposits_outstanding();
    rs.result.deposit_count = rs.world.contract().deposit_count();
    rs.result.nullifier_count = rs.world.contract().nullifier_count();

    json summary = summary_json_of(rs);
    summary["type"] = "summary";
    log_line(rs, summary);
    rs.result.summary_json = summary.dump(2) + "\n";
    rs.result.event_log = rs.log.str();
    std::ostringstream tree;
    rs.world.contract().tree().write_snapshot(tree);
    rs.result.tree_snapshot = tree.str();
    return rs.result;
}

} // namespace amr
