#include "amr/gas.hpp"

#include "amr/errors.hpp"

namespace amr {

GasReport gas_report(const GasModel& model, HashKind kind, unsigned depth, bool with_lending) {
    auto it = model.deposit_per_level.find(kind);
    if (it == model.deposit_per_level.end())
        throw Error(Err::BadConfig, "gas model lacks a per-level entry for this hash kind");
    GasReport report;
    report.deposit = model.deposit_base + it->second * depth;
    report.withdraw = model.withdraw_flat;
    if (with_lending) {
        report.deposit += model.lending_deposit_overhead;
        report.withdraw += model.lending_withdraw_overhead;
    }
    report.redeem = report.deposit + report.withdraw;
    return report;
}

} // namespace amr
