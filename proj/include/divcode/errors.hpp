#pragma once

#include <stdexcept>
#include <string>

namespace divcode {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed matrix/enumerator/manifest text.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

// Operation needs at least one nonzero codeword.
struct ZeroDimensional : Error {
    explicit ZeroDimensional(const std::string& what) : Error(what) {}
};

// The given word is not a codeword of the given code.
struct NotACodeword : Error {
    explicit NotACodeword(const std::string& what) : Error(what) {}
};

// Operation requires a code without identically-zero coordinates.
struct NotFullLength : Error {
    explicit NotFullLength(const std::string& what) : Error(what) {}
};

// Point multiset operation addressed a point of multiplicity zero.
struct PointAbsent : Error {
    explicit PointAbsent(const std::string& what) : Error(what) {}
};

// MacWilliams transform produced a negative or fractional coefficient.
struct NotAnEnumerator : Error {
    explicit NotAnEnumerator(const std::string& what) : Error(what) {}
};

// Formula preconditions not met (e.g. n >= 2^k - 1 in the dual transform).
struct Inapplicable : Error {
    explicit Inapplicable(const std::string& what) : Error(what) {}
};

// A search specification that cannot have solutions as stated.
struct SpecInfeasible : Error {
    explicit SpecInfeasible(const std::string& what) : Error(what) {}
};

// Brute-force verification would exceed the caller's budget.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

}  // namespace divcode
