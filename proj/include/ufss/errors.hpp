#pragma once

#include <stdexcept>
#include <string>

namespace ufss {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

// A point fell outside a guard (vanishing denominator or excluded locus).
struct GuardViolation : Error {
    using Error::Error;
};

// An operation's input promise was broken; carries a printable witness.
struct ContractViolation : Error {
    using Error::Error;
};

struct NormalizationError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& pointer, const std::string& what)
        : Error(pointer + ": " + what), pointer(pointer) {}
    std::string pointer;
};

}  // namespace ufss
