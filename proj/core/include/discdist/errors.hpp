/*
 * errors.hpp - exception taxonomy shared by the whole library.
 */
#ifndef DISCDIST_ERRORS_HPP
#define DISCDIST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace discdist {

// Base class for every error the library raises on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands do not fit together (dimension or degree mismatch, bad vector
// length, non-orthogonal matrix handed to an orthogonal-only operation).
struct ShapeError : Error {
    using Error::Error;
};

// Malformed polynomial text (bad header, duplicate multi-index, junk token).
struct ParseError : Error {
    using Error::Error;
};

// Mathematically degenerate input: the zero polynomial, a polynomial lying
// on the discriminant, coincident angles, a zero vector where a direction
// is required.
struct DegenerateError : Error {
    using Error::Error;
};

// A linear system is too ill-conditioned to trust (condition number guard).
struct ConditioningError : Error {
    using Error::Error;
};

// A point fails the requirements of classification (not quasi-singular,
// impossible kind for the degree, inconsistent frame extraction).
struct ClassifyError : Error {
    using Error::Error;
};

// Every restart of a global search failed to converge.
struct SearchError : Error {
    using Error::Error;
};

} // namespace discdist

#endif // DISCDIST_ERRORS_HPP
