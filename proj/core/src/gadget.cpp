#include "amr/gadget.hpp"

#include "amr/errors.hpp"

namespace amr {

uint64_t GadgetNode::total() const {
    uint64_t sum = constraints;
    for (const auto& child : children) sum += child.total();
    return sum;
}

GadgetNode withdraw_circuit(HashKind kind, unsigned depth, const CircuitCostModel& model) {
    if (depth < 1) throw Error(Err::BadConfig, "circuit depth must be at least 1");
    auto it = model.per_level_constraints.find(kind);
    if (it == model.per_level_constraints.end())
        throw Error(Err::BadConfig, "cost model lacks a per-level entry for this hash kind");

    GadgetNode root{std::string("withdraw-") + hash_kind_name(kind), 0, {}};
    root.children.push_back({"note-opening", model.base_constraints, {}});
    GadgetNode membership{"membership", 0, {}};
    for (unsigned level = 0; level < depth; ++level)
        membership.children.push_back({"tree-level-" + std::to_string(level), it->second, {}});
    root.children.push_back(std::move(membership));
    return root;
}

uint64_t count_constraints(HashKind kind, unsigned depth, const CircuitCostModel& model) {
    return withdraw_circuit(kind, depth, model).total();
}

} // namespace amr
