#pragma once

#include <stdexcept>
#include <string>

namespace percolab {

enum class Errc {
    SelfLoop,
    DuplicateEdge,
    VertexOutOfRange,
    SetsNotDisjoint,
    MaskLengthMismatch,
    FormatError,
    InvalidParams,
    ParityViolation,
    DivisibilityViolation,
    RepairFailed,
    InvalidProbability,
    GraphMismatch,
    DuplicateRound,
    InvalidPermutation,
    NotRegular,
    NotConnected,
    NonPositiveEpsilon,
    SubcriticalMean,
    BudgetExceeded,
    NoConvergence,
    GuaranteeViolated,
    UnknownMetric,
    UnknownPredicate,
    OutputUnwritable,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace percolab
