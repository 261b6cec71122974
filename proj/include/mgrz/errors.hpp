#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mgrz {

// Bad user input: malformed files, schema violations, unmet preconditions.
// The CLI maps these to exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured cap was exceeded (valuation bits, subset scans, tuple budgets).
struct BudgetError : InputError {
    explicit BudgetError(const std::string& msg) : InputError(msg) {}
};

// Parse failure with the byte offset of the failure point and the set of
// token kinds that would have been accepted there.
struct ParseError : InputError {
    ParseError(std::string msg, std::size_t offset_, std::vector<std::string> expected_)
        : InputError(std::move(msg)), offset(offset_), expected(std::move(expected_)) {}
    std::size_t offset;
    std::vector<std::string> expected;
};

// A lemma-guaranteed condition failed at runtime: a bug certificate, never a
// user error. The CLI maps these to exit code 3.
struct InvariantError : std::logic_error {
    explicit InvariantError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace mgrz
