#pragma once

#include <stdexcept>
#include <string>

namespace qcert {

/// Malformed input file (mesh, field, or problem definition).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally invalid data (non-conforming mesh, degenerate element, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad run configuration (unknown option, out-of-range parameter, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A theorem's hypotheses do not apply to the given problem/mesh pair.
/// Distinct from a failing certificate: the condition could not even be posed.
struct InapplicableError : std::runtime_error {
    explicit InapplicableError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qcert
