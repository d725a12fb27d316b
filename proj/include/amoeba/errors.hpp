#pragma once

#include <stdexcept>
#include <string>

namespace amoeba {

/// Malformed textual input (rational strings, JSON documents, CLI vectors).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a structural requirement: ambient
/// dimension mismatch, impure complex, dependent generators and so on.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation refused to start because it would exceed a configured size.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The numerical sampler could not produce a single usable sample.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace amoeba
