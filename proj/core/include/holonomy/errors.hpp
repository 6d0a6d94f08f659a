#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace holonomy {

/// Base class of every failure raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation outside a declared domain (base chart, section domain, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A lifted curve left its fiber chart; carries the parameter where it did.
class ChartEscapeError : public Error {
public:
    ChartEscapeError(const std::string& what, double t_escape)
        : Error(what), t_escape_(t_escape) {}
    double escape_parameter() const { return t_escape_; }

private:
    double t_escape_;
};

/// Path endpoints do not match under concatenation, or segments do not chain.
class CompositionError : public Error {
public:
    using Error::Error;
};

/// Requested construction does not fit inside the available geometry.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// A finite-difference step would leave the chart; the base point is too
/// close to the chart boundary for the requested derivative.
class BoundaryProximityError : public Error {
public:
    using Error::Error;
};

/// An operation's precondition failed (e.g. an input did not pass a gate).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Flatness gate failure: the connection has non-negligible curvature.
class NotFlatError : public Error {
public:
    using Error::Error;
};

/// Malformed scenario/input data; carries the path to the offending field.
class SchemaError : public Error {
public:
    SchemaError(std::string field_path, const std::string& message)
        : Error(field_path + ": " + message), field_path_(std::move(field_path)) {}
    const std::string& field_path() const { return field_path_; }

private:
    std::string field_path_;
};

}  // namespace holonomy
