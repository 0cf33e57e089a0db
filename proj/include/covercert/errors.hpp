#ifndef COVERCERT_ERRORS_HPP
#define COVERCERT_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace covercert {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// field / integer domain
struct NotPrimeError : Error {
    using Error::Error;
};
struct OverflowError : Error {
    using Error::Error;
};
struct DivisionByZeroError : Error {
    using Error::Error;
};
struct ContextMismatchError : Error {
    using Error::Error;
};

// polynomial ring
struct BothZeroError : Error {
    using Error::Error;
};

// enumeration
struct CapExceededError : Error {
    CapExceededError(const std::string& msg, std::string required)
        : Error(msg), required_size(std::move(required)) {}
    // decimal string: the enumeration size that was requested (may exceed 64 bits)
    std::string required_size;
};

// input / parsing
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos) : Error(msg), position(pos) {}
    std::size_t position;
};
struct InvalidModulusError : Error {
    using Error::Error;
};
struct InvalidInputError : Error {
    using Error::Error;
};

// distortion
struct InvalidDeltaError : Error {
    using Error::Error;
};

// bounds
struct PrecisionUnreachableError : Error {
    using Error::Error;
};

}  // namespace covercert

#endif
