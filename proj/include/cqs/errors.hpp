#pragma once

#include <stdexcept>
#include <string>

namespace cqs {

/// Malformed textual input (bad grammar, unparseable number).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input that violates an invariant of the requested type,
/// e.g. gcd(n, q) != 1 or a non-pointed cone.
class InvalidSingularity : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Valid singularity outside the domain of the deformation results:
/// smooth points and A_{n-1} singularities (embedding dimension <= 3).
class DegenerateClass : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A brute-force oracle was asked to run beyond its configured size guard.
class OracleBoundExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace cqs
