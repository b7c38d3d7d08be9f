#pragma once

#include <stdexcept>
#include <string>

namespace rcpoly {

/// A tuple component, party index or cardinality is outside its valid range.
class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A probability table does not sum to one for some joint input.
class NormalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Geometry the library cannot decide (anything but 1+1 dimensions for cone containment).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent inputs: non-spacelike events, mismatched party counts, unknown presets.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A correlator expression needs a marginal that is not well-defined under the structure.
class CompilationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed serialized input (JSON, cdd text, checkpoints, rationals).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact computation left its supported integer range.
class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rcpoly
