#pragma once

#include <stdexcept>
#include <string>

namespace schubert_kit {

/// Malformed input: bad group spec, invalid word, violated precondition.
class InvalidInput : public std::invalid_argument {
public:
  explicit InvalidInput(const std::string &what) : std::invalid_argument(what) {}
};

/// A truncated series does not carry enough coefficients for the request.
class PrecisionError : public std::runtime_error {
public:
  explicit PrecisionError(const std::string &what) : std::runtime_error(what) {}
};

/// An enumeration cutoff (ball radius, expression cap, lattice window) was hit.
class BoundsError : public std::runtime_error {
public:
  explicit BoundsError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace schubert_kit
