#pragma once

#include <stdexcept>
#include <string>

namespace bmo {

/// Raised when an operation's precondition is violated by its inputs.
/// The CLI maps this to exit code 3.
class Rejection : public std::runtime_error {
public:
    explicit Rejection(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] void reject(const std::string& what);

}  // namespace bmo
