#pragma once

#include <stdexcept>
#include <string>

namespace cvol {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument to a special function (log of 0, cross-ratio of infinity, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Four points with a coincidence; the ideal simplex collapses.
class DegenerateSimplexError : public Error {
public:
    using Error::Error;
};

// Structurally invalid input file: malformed JSON, bad permutation,
// non-involutive gluing, interior vertex, incompatible orientation signs.
// The message carries a location (tet/face or JSON context).
class ParseError : public Error {
public:
    using Error::Error;
};

// Face pairing that does not preserve the order-induced edge orientations.
class OrderingError : public ParseError {
public:
    using ParseError::ParseError;
};

// Caller-supplied data disagree with each other (e.g. flattenings whose
// cross-ratios do not match the point configuration).
class InconsistentInputError : public Error {
public:
    using Error::Error;
};

// Newton failed: no residual below tolerance after all restarts.
class SolverError : public Error {
public:
    SolverError(const std::string& msg, double best) : Error(msg), best_residual(best) {}
    double best_residual;
};

// A shape converged onto 0 or 1.
class DegenerateSolutionError : public Error {
public:
    using Error::Error;
};

// Shapes fail a gluing or cusp equation; reported before any geometry is built.
class EquationResidualError : public Error {
public:
    EquationResidualError(const std::string& msg, double res) : Error(msg), residual(res) {}
    double residual;
};

// Cusp development re-visited a triangle with a different shape: the
// peripheral holonomy is not translational.
class NonParabolicHolonomyError : public Error {
public:
    NonParabolicHolonomyError(const std::string& msg, double res) : Error(msg), residual(res) {}
    double residual;
};

// Corner products around one edge class disagree.
class CocycleInconsistencyError : public Error {
public:
    using Error::Error;
};

// Recovered flattening exponents are not integers.
class FlatteningIntegralityError : public Error {
public:
    using Error::Error;
};

// normalize_cosets on two matrices in the same upper-triangular coset.
class SameCosetError : public Error {
public:
    using Error::Error;
};

} // namespace cvol
