#pragma once

#include <stdexcept>
#include <string>

namespace gp {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An operand violates a mathematical precondition (ball touches a pole,
/// branch cut, or zero). Callers typically escalate precision or subdivide.
struct DomainError : Error {
    using Error::Error;
};

/// Gamma requested on a ball whose reciprocal encloses zero.
struct PoleError : Error {
    using Error::Error;
};

/// The requested tolerance is unreachable within the context's max_bits.
struct PrecisionExhausted : Error {
    using Error::Error;
};

/// A contour sub-segment's image ball still contains zero at the
/// subdivision and precision limits. Perturb the contour and retry.
struct BoundaryZero : Error {
    using Error::Error;
};

/// Power-series operands of different truncation orders.
struct OrderMismatch : Error {
    using Error::Error;
};

/// A grid certificate condition failed; `condition` is the 1-based
/// index of the failing spacing condition.
struct ConditionFailed : Error {
    int condition;
    ConditionFailed(int cond, const std::string& msg) : Error(msg), condition(cond) {}
};

/// Newton refinement did not converge for any offset in the seed schedule.
struct NewtonDivergence : Error {
    using Error::Error;
};

/// A certified exact answer was requested on ball (inexact) input.
struct InexactInput : Error {
    using Error::Error;
};

/// The parameter-selection inequality fails at the given lambda.
struct LambdaTooSmall : Error {
    using Error::Error;
};

/// A report was passed to a plot emitter of a different kind.
struct KindMismatch : Error {
    using Error::Error;
};

/// A sign or order decision could not be separated from zero at max_bits.
struct Inconclusive : Error {
    using Error::Error;
};

} // namespace gp
