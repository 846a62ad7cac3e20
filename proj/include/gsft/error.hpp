#pragma once

#include <stdexcept>
#include <string>

namespace gsft {

// Exit codes used by the command-line tool. Every exception thrown by the
// library derives from one of the three classes below.
enum class ExitCode : int { ok = 0, input = 1, precondition = 2, cap = 3 };

/// Malformed or inconsistent input (dimension mismatch, bad notation, ...).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold (not irreducible, action not
/// invariant, map not right-resolving, ...).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration cap or size limit was exceeded. Never a silent truncation.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_cap = 100000;

}  // namespace gsft
