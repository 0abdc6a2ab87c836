#pragma once

#include <stdexcept>
#include <string>

namespace colexcode {

// Input file could not be read or decoded.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally well-formed input that violates a lattice or code axiom.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration would exceed the configured cap (2^cap_log2 elements).
struct EnumerationCapError : std::runtime_error {
    explicit EnumerationCapError(const std::string& what) : std::runtime_error(what) {}
};

// Lookup-table construction found two inequivalent low-weight errors with the
// same syndrome, disproving the distance the table was built for.
struct DistanceRefutedError : std::runtime_error {
    explicit DistanceRefutedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace colexcode
