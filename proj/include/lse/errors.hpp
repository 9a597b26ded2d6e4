// Copyright 2026 The lsechain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lse {

/// Root of the library's exception hierarchy.
///
/// Two families are distinguished because the CLI maps them to different
/// exit codes: `ValidationError` (bad input, exit 1) and `NumericError`
/// (a solver did not deliver, exit 2).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Precondition violated by the caller (e.g. M > L, mismatched basis).
class ArgumentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Requested size exceeds a configured or hard capacity.
class CapacityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Quantity undefined for the given input (e.g. imbalance with M = 0).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

/// Iterative method stopped above tolerance. Carries the achieved residual.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : NumericError(what), achieved_residual_(achieved) {}

  double achieved_residual() const noexcept { return achieved_residual_; }

 private:
  double achieved_residual_;
};

/// A converged Bethe root set violating an acceptance rule (collision,
/// excluded momentum).
class RejectedRootError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Ratio too extreme to represent; the log-ratio is still reported.
class OverflowGuardError : public NumericError {
 public:
  OverflowGuardError(const std::string& what, double log_ratio)
      : NumericError(what), log_ratio_(log_ratio) {}

  double log_ratio() const noexcept { return log_ratio_; }

 private:
  double log_ratio_;
};

/// Writes a one-line warning to stderr unless warnings are silenced.
void warn(const std::string& message);
void set_warnings_enabled(bool enabled);

}  // namespace lse
