#pragma once

#include <stdexcept>
#include <string>

namespace econet {

// Error taxonomy shared by the library and the CLI exit-code mapping:
// ConfigError -> 2, IoError/ParseError -> 3, DataValidationError -> 4.

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LookupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientTailError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (e.g. cascading from a solvent agent).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace econet
