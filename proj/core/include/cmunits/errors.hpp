#pragma once

#include <stdexcept>
#include <string>

namespace cmunits {

/**
 * Error hierarchy. Everything mathematical derives from MathError so callers
 * can distinguish "the computation refused the input" from usage mistakes,
 * which surface as std::invalid_argument / std::domain_error directly.
 */
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedField final : MathError {
    explicit UnsupportedField(int d)
        : MathError("make_field: no imaginary quadratic field of class number one with d=" +
                    std::to_string(d)) {}
};

struct DivisionByZero final : MathError {
    explicit DivisionByZero(const std::string& where) : MathError(where + ": division by zero") {}
};

struct NotDivisible final : MathError {
    explicit NotDivisible(const std::string& what_failed)
        : MathError("exact_divide: not divisible (" + what_failed + ")") {}
};

struct InertPrime final : MathError {
    InertPrime(long p, int d)
        : MathError("split_prime: p=" + std::to_string(p) + " is inert in d=" + std::to_string(d)),
          p(p) {}
    long p;
};

struct RamifiedPrime final : MathError {
    RamifiedPrime(long p, int d)
        : MathError("split_prime: p=" + std::to_string(p) + " is ramified in d=" +
                     std::to_string(d)),
          p(p) {}
    long p;
};

struct PoleAtLatticePoint final : MathError {
    PoleAtLatticePoint() : MathError("wp: evaluation at a lattice point") {}
};

struct EvaluationAtDivisor final : MathError {
    EvaluationAtDivisor() : MathError("theta: evaluation point lies on the divisor") {}
};

struct NonTorsionPoint final : MathError {
    explicit NonTorsionPoint(const std::string& msg) : MathError("torsion: " + msg) {}
};

struct NonInvertible final : MathError {
    explicit NonInvertible(const std::string& where)
        : MathError(where + ": modular inverse of a non-unit") {}
};

struct NonInvertibleDenominator final : MathError {
    explicit NonInvertibleDenominator(const std::string& msg)
        : MathError("exponent_constants: " + msg) {}
};

struct BadCosets final : MathError {
    explicit BadCosets(const std::string& msg) : MathError("cosets: " + msg) {}
};

struct RecognitionFailure final : MathError {
    explicit RecognitionFailure(const std::string& msg) : MathError("recognize: " + msg) {}
};

struct AdmissibilityError final : MathError {
    explicit AdmissibilityError(const std::string& msg) : MathError(msg) {}
};

struct PipelineMismatch final : MathError {
    explicit PipelineMismatch(const std::string& msg)
        : MathError("epsilon pipelines: " + msg) {}
};

struct SearchExhausted final : MathError {
    explicit SearchExhausted(const std::string& msg) : MathError("pth_power_test: " + msg) {}
};

}  // namespace cmunits
