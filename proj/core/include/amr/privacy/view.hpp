#pragma once

#include <optional>
#include <vector>

#include "amr/amount.hpp"
#include "amr/field.hpp"

// Adversary-visible surface only. Code holding just this header can see the
// public commitment/nullifier stream but has no route to the simulator's
// ground truth; keep it free of ground_truth.hpp includes.

namespace amr {

using Height = uint64_t;

/// Public per-height view of the mixer: which commitments honest users have
/// posted (preimages unknown to the adversary) and which nullifiers have
/// appeared. Deposits from adversary-controlled actors are excluded from the
/// anonymity set. Actors marked as linkable collapse into one contribution
/// per link group.
class AnonymityView {
  public:
    void record_commitment(Height height, const FieldElement& cm, bool honest,
                           std::optional<uint32_t> link_group = std::nullopt);
    void record_nullifier(Height height, const FieldElement& sn, bool honest);

    /// |AnomSet^h|: honest, link-collapsed commitments at heights <= h.
    uint64_t anom_set_size(Height height) const;
    /// |NullifierSet^h|.
    uint64_t nullifier_set_size(Height height) const;

    /// The anonymity units at height h: singleton commitments plus one unit
    /// per link group (all of that group's commitments).
    std::vector<std::vector<FieldElement>> units_at(Height height) const;

  private:
    struct CommitmentEvent {
        Height height;
        FieldElement cm;
        std::optional<uint32_t> link_group;
    };
    struct NullifierEvent {
        Height height;
        FieldElement sn;
    };
    std::vector<CommitmentEvent> commitments_; // honest only, height-ordered
    std::vector<NullifierEvent> nullifiers_;   // honest only, height-ordered
};

/// Withdraw linking bound: 1 / |AnomSet^h| (negligible term reported as 0;
/// the simulation proof backend puts cryptanalytic advantage out of scope).
double adv_bound_withdraw(const AnonymityView& view, Height h); // EmptyAnonSet

/// Redeem linking bound: 1 / |AnomSet^{h - t_con}|.
double adv_bound_redeem(const AnonymityView& view, Height h,
                        Height t_con); // EmptyAnonSet, HeightUnderflow

/// Capital an adversary must commit to invalidate one pending withdrawal by
/// front-running k deposits, plus the fees it burns doing so.
struct FrontrunCost {
    Amount total;     // k * (amt + fee_dep)
    Amount sunk_fees; // k * fee_dep
};
FrontrunCost frontrun_cost(uint64_t k, Amount amt, Amount fee_dep);

} // namespace amr
