#pragma once

#include <cstdint>
#include <map>

#include "amr/hash.hpp"

namespace amr {

/// Reporting-only gas estimates; execution never meters gas. Deposits grow
/// linearly with tree depth, withdrawals are flat, and a redeem pays for a
/// deposit plus a withdraw (proof check and tree update).
struct GasModel {
    uint64_t deposit_base = 43000;
    std::map<HashKind, uint64_t> deposit_per_level = {
        {HashKind::MiMC, 51000},
        {HashKind::Poseidon, 41000},
    };
    uint64_t withdraw_flat = 320000;
    uint64_t lending_deposit_overhead = 300000;
    uint64_t lending_withdraw_overhead = 200000;

    static GasModel defaults() { return GasModel{}; }
};

struct GasReport {
    uint64_t deposit = 0;
    uint64_t withdraw = 0;
    uint64_t redeem = 0;
};

GasReport gas_report(const GasModel& model, HashKind kind, unsigned depth, bool with_lending);

} // namespace amr
