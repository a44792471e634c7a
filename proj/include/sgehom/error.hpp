#pragma once

#include <stdexcept>
#include <string>

namespace sgehom {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different spatial dimensions, or a dimension is not 2 or 3.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A tensor does not have the index symmetries its type requires.
class SymmetryError : public Error {
public:
    using Error::Error;
};

/// An operator that must be positive definite on its symmetric subspace is not.
class NotPositiveDefiniteError : public Error {
public:
    using Error::Error;
};

/// Invalid or degenerate geometry (zero volume, self-intersection, containment).
class GeometryError : public Error {
public:
    using Error::Error;
};

/// A scalar input is out of its admissible range (f <= 0, rho2 <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input file does not follow the documented JSON schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

} // namespace sgehom
