#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mdpcc {

// Base for every library error. Callers that only care about "this input was
// bad" vs "this computation refused to run" can catch the subtypes below.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- construction / input validation -------------------------------------

struct NonPrimeCharacteristicError : Error {
    using Error::Error;
};

struct ReducibleModulusError : Error {
    using Error::Error;
};

struct FieldMismatchError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct NotSquareError : Error {
    using Error::Error;
};

struct IndexOutOfRangeError : Error {
    using Error::Error;
};

struct NotStrictlyIncreasingError : Error {
    using Error::Error;
};

struct ShapeMismatchError : Error {
    using Error::Error;
};

struct InsufficientBlocksError : Error {
    using Error::Error;
};

// Malformed serialized input; message names the offending field.
struct ParseError : Error {
    using Error::Error;
};

// ---- computation refusals --------------------------------------------------

// An enumeration would exceed the configured budget. Carries the count the
// computation would need so callers can report it instead of silently sampling.
struct BudgetExceededError : Error {
    std::uint64_t required;
    std::uint64_t budget;
    BudgetExceededError(const std::string& what, std::uint64_t required_, std::uint64_t budget_)
        : Error(what), required(required_), budget(budget_) {}
};

struct NotControllableError : Error {
    using Error::Error;
};

struct NotObservableError : Error {
    using Error::Error;
};

struct RankDeficientError : Error {
    using Error::Error;
};

// Search exhausted its attempts (or a complete scan) without a hit.
// certified = true means a complete exhaustive scan proved nonexistence.
struct NotFoundError : Error {
    std::uint64_t attempts;
    bool certified;
    NotFoundError(const std::string& what, std::uint64_t attempts_, bool certified_)
        : Error(what), attempts(attempts_), certified(certified_) {}
};

// No rank-preserving extension of a Markov sequence was found.
struct ExtensionFailedError : Error {
    using Error::Error;
};

} // namespace mdpcc
