#pragma once

#include <stdexcept>
#include <string>

namespace smplab {

/// Malformed arguments: out-of-range vertices, bad parameters, bad files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A brute-force or enumeration cap would be exceeded.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The caller violated a documented precondition (e.g. a non-distributive
/// lattice handed to birkhoff()).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A structure failed its own validation (not-a-lattice, invalid wood, ...).
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A randomized construction could not be verified (seed banks, labelings).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace smplab
