#pragma once

#include <map>

#include "amr/field.hpp"

// Simulator-only knowledge. Never hand this to adversary-role code; the
// Monte-Carlo evaluator is the one consumer that sees both sides.

namespace amr {

using Height = uint64_t;

/// Which commitment originated which nullifier (shared k_dep), when each
/// commitment entered the tree, and who is honest.
class GroundTruth {
  public:
    void record_commitment(const FieldElement& cm, Height inserted_at, bool honest);
    void record_origin(const FieldElement& sn, const FieldElement& cm);

    bool knows_origin(const FieldElement& sn) const { return origin_.count(sn) != 0; }
    const FieldElement& origin(const FieldElement& sn) const; // ConfigError if unknown
    Height insertion_height(const FieldElement& cm) const;    // ConfigError if unknown
    bool commitment_honest(const FieldElement& cm) const;

  private:
    std::map<FieldElement, FieldElement> origin_;
    std::map<FieldElement, Height> inserted_at_;
    std::map<FieldElement, bool> honest_;
};

} // namespace amr
