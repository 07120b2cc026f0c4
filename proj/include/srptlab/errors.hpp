#pragma once

#include <stdexcept>
#include <string>

namespace srptlab {

// Malformed or invalid input data (instance text, trace JSON, generator ranges).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameter outside the range where a quantity or check is defined (e.g. epsilon).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Instance is outside the brute-force oracle's supported class or size limits.
class OracleLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace srptlab
