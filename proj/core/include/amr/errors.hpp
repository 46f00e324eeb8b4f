#pragma once

#include <stdexcept>
#include <string>

namespace amr {

// Every failure the engine can signal. Contract-level codes double as revert
// reasons in the ledger's event log.
enum class Err {
    DivisionByZero,
    MalformedNote,
    BadConfig,
    BadIndex,
    MalformedPath,
    UnsatisfiedRelation,
    BadSignature,
    InsufficientBalance,
    InsufficientShares,
    ZeroAmount,
    WrongDenomination,
    TreeFull,
    StaleRoot,
    DoubleSpend,
    BadProof,
    WrongRewardRoot,
    InsufficientTokens,
    BadDuration,
    NoLock,
    ZeroTotalWeight,
    NoteNotFound,
    NoteTooYoung,
    EmptyAnonSet,
    HeightUnderflow,
    UnsortedTrace,
    ConfigError,
    AuditFailure,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

    Err code() const { return code_; }

  private:
    Err code_;
};

} // namespace amr
