#pragma once

#include "amr/privacy/ground_truth.hpp"
#include "amr/privacy/view.hpp"

namespace amr {

struct LinkerResult {
    uint64_t trials = 0;
    uint64_t successes = 0;
    double rate = 0.0;
    double std_error = 0.0; // sqrt(p(1-p)/trials)
};

/// Uniform-guess adversary: each trial picks one anonymity unit uniformly
/// from the eligible set and succeeds iff the true origin of `sn` lies in
/// it. For a withdraw observed at h+1 the eligible set is AnomSet^h; for a
/// redeem it is AnomSet^{h - t_con}. Per-trial sub-seeds derive from `seed`,
/// so results are deterministic and merge-order independent.
LinkerResult monte_carlo_linker(const AnonymityView& view, const GroundTruth& truth,
                                const FieldElement& sn, Height h,
                                std::optional<Height> redeem_t_con, uint64_t trials,
                                uint64_t seed);

} // namespace amr
