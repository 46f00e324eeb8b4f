#include "amr/privacy/monte_carlo.hpp"

#include <cmath>
#include <set>

namespace amr {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

void AnonymityView::record_commitment(Height height, const FieldElement& cm, bool honest,
                                      std::optional<uint32_t> link_group) {
    if (!honest) return; // adversary-known preimages never join the anonymity set
    if (!commitments_.empty() && commitments_.back().height > height)
        throw Error(Err::ConfigError, "commitment events must arrive height-ordered");
    commitments_.push_back({height, cm, link_group});
}

void AnonymityView::record_nullifier(Height height, const FieldElement& sn, bool honest) {
    if (!honest) return;
    if (!nullifiers_.empty() && nullifiers_.back().height > height)
        throw Error(Err::ConfigError, "nullifier events must arrive height-ordered");
    nullifiers_.push_back({height, sn});
}

uint64_t AnonymityView::anom_set_size(Height height) const {
    uint64_t singles = 0;
    std::set<uint32_t> groups;
    for (const auto& ev : commitments_) {
        if (ev.height > height) break;
        if (ev.link_group) {
            groups.insert(*ev.link_group);
        } else {
            ++singles;
        }
    }
    return singles + groups.size();
}

uint64_t AnonymityView::nullifier_set_size(Height height) const {
    uint64_t n = 0;
    for (const auto& ev : nullifiers_) {
        if (ev.height > height) break;
        ++n;
    }
    return n;
}

std::vector<std::vector<FieldElement>> AnonymityView::units_at(Height height) const {
    std::vector<std::vector<FieldElement>> units;
    std::map<uint32_t, size_t> group_slot;
    for (const auto& ev : commitments_) {
        if (ev.height > height) break;
        if (!ev.link_group) {
            units.push_back({ev.cm});
        } else {
            auto [it, fresh] = group_slot.try_emplace(*ev.link_group, units.size());
            if (fresh) units.emplace_back();
            units[it->second].push_back(ev.cm);
        }
    }
    return units;
}

double adv_bound_withdraw(const AnonymityView& view, Height h) {
    uint64_t n = view.anom_set_size(h);
    if (n == 0) throw Error(Err::EmptyAnonSet, "anonymity set is empty at this height");
    return 1.0 / (double)n;
}

double adv_bound_redeem(const AnonymityView& view, Height h, Height t_con) {
    if (h < t_con) throw Error(Err::HeightUnderflow, "height below t_con");
    uint64_t n = view.anom_set_size(h - t_con);
    if (n == 0) throw Error(Err::EmptyAnonSet, "anonymity set is empty at h - t_con");
    return 1.0 / (double)n;
}

FrontrunCost frontrun_cost(uint64_t k, Amount amt, Amount fee_dep) {
    FrontrunCost cost;
    cost.total = Amount::from_raw((amt.raw + fee_dep.raw) * k);
    cost.sunk_fees = Amount::from_raw(fee_dep.raw * k);
    return cost;
}

void GroundTruth::record_commitment(const FieldElement& cm, Height inserted_at, bool honest) {
    inserted_at_[cm] = inserted_at;
    honest_[cm] = honest;
}

void GroundTruth::record_origin(const FieldElement& sn, const FieldElement& cm) {
    origin_[sn] = cm;
}

const FieldElement& GroundTruth::origin(const FieldElement& sn) const {
    auto it = origin_.find(sn);
    if (it == origin_.end()) throw Error(Err::ConfigError, "nullifier has no recorded origin");
    return it->second;
}

Height GroundTruth::insertion_height(const FieldElement& cm) const {
    auto it = inserted_at_.find(cm);
    if (it == inserted_at_.end()) throw Error(Err::ConfigError, "commitment has no recorded height");
    return it->second;
}

bool GroundTruth::commitment_honest(const FieldElement& cm) const {
    auto it = honest_.find(cm);
    if (it == honest_.end()) throw Error(Err::ConfigError, "commitment has no recorded owner role");
    return it->second;
}

LinkerResult monte_carlo_linker(const AnonymityView& view, const GroundTruth& truth,
                                const FieldElement& sn, Height h,
                                std::optional<Height> redeem_t_con, uint64_t trials,
                                uint64_t seed) {
    Height eligible_height = h;
    if (redeem_t_con) {
        if (h < *redeem_t_con) throw Error(Err::HeightUnderflow, "height below t_con");
        eligible_height = h - *redeem_t_con;
    }
    auto units = view.units_at(eligible_height);
    if (units.empty()) throw Error(Err::EmptyAnonSet, "no eligible commitments to guess from");

    const FieldElement& target = truth.origin(sn);
    LinkerResult result;
    result.trials = trials;
    for (uint64_t t = 0; t < trials; ++t) {
        // Per-trial sub-seed keeps fan-out deterministic.
        uint64_t draw = splitmix64(seed ^ splitmix64(t));
        const auto& unit = units[draw % units.size()];
        for (const auto& cm : unit) {
            if (cm == target) {
                ++result.successes;
                break;
            }
        }
    }
    result.rate = trials ? (double)result.successes / (double)trials : 0.0;
    result.std_error = trials ? std::sqrt(result.rate * (1.0 - result.rate) / (double)trials) : 0.0;
    return result;
}

} // namespace amr
