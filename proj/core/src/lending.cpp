#include "amr/lending.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace amr {

namespace {

using boost::multiprecision::cpp_int;

cpp_int widen(u128 v) {
    return (cpp_int(uint64_t(v >> 64)) << 64) | uint64_t(v);
}

u128 narrow(const cpp_int& v) {
    if (v >> 128) throw Error(Err::ConfigError, "lending arithmetic overflow");
    return ((u128)(uint64_t)(v >> 64) << 64) | (uint64_t)(v & 0xffffffffffffffffull);
}

} // namespace

LendingModel::LendingModel(Amount rate_per_block)
    : rate_per_block_(rate_per_block), exchange_rate_(Amount::from_raw(Amount::kScale)) {
    if (rate_per_block.raw < Amount::kScale)
        throw Error(Err::BadConfig, "rate_per_block must be at least 1");
}

Amount LendingModel::accrue(uint64_t blocks_elapsed) {
    if (blocks_elapsed == 0 || rate_per_block_.raw == Amount::kScale) return Amount{};

    // floor(rate * (rate_per_block / scale)^n), one rounding step total. The
    // fraction is reduced first so the big-integer power stays as small as
    // the rate's decimal form allows.
    cpp_int num = widen(rate_per_block_.raw);
    cpp_int den = Amount::kScale;
    cpp_int g = gcd(num, den);
    num /= g;
    den /= g;
    cpp_int new_rate = widen(exchange_rate_.raw) * pow(num, (unsigned)blocks_elapsed) /
                       pow(den, (unsigned)blocks_elapsed);

    Amount value_before = value_of(total_shares_);
    exchange_rate_ = Amount::from_raw(narrow(new_rate));
    Amount value_after = value_of(total_shares_);

    Amount minted = value_after - value_before;
    total_underlying_ = total_underlying_ + minted;
    minted_total_ = minted_total_ + minted;
    return minted;
}

u128 LendingModel::deposit(Amount amt) {
    if (amt.is_zero()) throw Error(Err::ZeroAmount, "lending deposit of zero");
    u128 shares = mul_div_floor(amt.raw, Amount::kScale, exchange_rate_.raw);
    total_shares_ += shares;
    total_underlying_ = total_underlying_ + amt;
    return shares;
}

Amount LendingModel::redeem(u128 shares) {
    if (shares > total_shares_) throw Error(Err::InsufficientShares, "redeem exceeds shares");
    Amount payout;
    if (shares != 0 && shares == total_shares_) {
        payout = total_underlying_; // full exit drains rounding dust too
    } else {
        payout = value_of(shares);
    }
    total_shares_ -= shares;
    total_underlying_ = total_underlying_ - payout;
    return payout;
}

Amount LendingModel::value_of(u128 shares) const {
    return Amount::from_raw(mul_div_floor(shares, exchange_rate_.raw, Amount::kScale));
}

} // namespace amr
