#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "amr/hash.hpp"

namespace amr {

/// Per-gadget constraint weights for the withdraw circuit. The defaults
/// reproduce the published totals base + per_level x depth.
struct CircuitCostModel {
    uint64_t base_constraints = 1815;
    std::map<HashKind, uint64_t> per_level_constraints = {
        {HashKind::MiMC, 1323},
        {HashKind::Poseidon, 243},
    };

    static CircuitCostModel defaults() { return CircuitCostModel{}; }
};

/// One node of a composed circuit; constraints of a subtree add up.
struct GadgetNode {
    std::string name;
    uint64_t constraints = 0;
    std::vector<GadgetNode> children;

    uint64_t total() const;
};

/// Builds the withdraw circuit as a gadget tree: one note-opening gadget
/// (key, nullifier and commitment hashes plus statement wiring) and one
/// tree-level gadget per Merkle level.
GadgetNode withdraw_circuit(HashKind kind, unsigned depth, const CircuitCostModel& model);

/// Constraint count of the withdraw circuit, computed by summing the
/// composed gadget tree (never by evaluating a closed form).
uint64_t count_constraints(HashKind kind, unsigned depth,
                           const CircuitCostModel& model = CircuitCostModel::defaults());

} // namespace amr
