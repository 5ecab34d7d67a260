#pragma once

#include <stdexcept>
#include <string>

namespace psh {

/// Bad or inconsistent configuration. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable, malformed or geometrically invalid input layer. Exit code 3.
class LayerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse failure carrying the 1-based line of the offending token.
class ParseError : public LayerError {
public:
    ParseError(const std::string& what, int line)
        : LayerError(what + " at line " + std::to_string(line)), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Sampling or computation outside the valid domain (outside DEM, NODATA, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A result violated an invariant the pipeline promises. Exit code 4.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace psh
