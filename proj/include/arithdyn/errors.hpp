#pragma once

#include <stdexcept>
#include <string>

namespace arithdyn {

/// Malformed or mathematically unusable input (CLI exit code 2).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The forms provably share a common zero over the algebraic closure.
class InvalidMorphism : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Rank deficiency at every tested degree: the forms may or may not define a
/// morphism, but no certificate was produced.
class NoCertificate : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class BadReduction : public InvalidInput {
public:
    explicit BadReduction(unsigned long p)
        : InvalidInput("bad reduction at p = " + std::to_string(p)), prime(p) {}
    unsigned long prime;
};

class NotOnCurve : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// A computation would exceed its configured resource limit (CLI exit code 3).
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace arithdyn
