#pragma once

#include <stdexcept>
#include <string>

namespace kicktop {

// Precondition violations raise std::invalid_argument; the two types below
// carry the failures the command-line tool maps to distinct exit codes.

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A computed quantity left its admissible range by more than round-off
/// (negative probability, non-normalized distribution, NaN).
class NumericalIntegrityError : public std::runtime_error {
 public:
  explicit NumericalIntegrityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kicktop
