//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef WLBENCH_ERROR_H_
#define WLBENCH_ERROR_H_

#include <stdexcept>
#include <string>

namespace wlbench {

// Base of every error thrown by the library. Subclasses partition failures
// the way the command-line tool maps them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied an argument outside the operation's domain.
class InputError : public Error {
 public:
  using Error::Error;
};

// A precondition the caller was responsible for checking does not hold.
class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

class IoError : public InputError {
 public:
  using InputError::InputError;
};

// Input file is readable but its contents violate the format.
class FormatError : public InputError {
 public:
  using InputError::InputError;
};

// File declares a schema version this build cannot read.
class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

// Cross-file binding is broken (e.g. masks scored against another benchmark).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace wlbench

#endif  // WLBENCH_ERROR_H_
