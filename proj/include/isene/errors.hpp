// Copyright 2026 The Isene Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace isene {

/// Base of every error raised by the library. The CLI maps ConfigError to
/// exit code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DimensionMismatch"; }
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "InvalidArgument"; }
};

class NumericError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NumericError"; }
};

class NonConvergence : public NumericError {
 public:
  NonConvergence(const std::string& what, double last_residual)
      : NumericError(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }
  const char* kind() const noexcept override { return "NonConvergence"; }

 private:
  double last_residual_;
};

class SaddleDetected : public NumericError {
 public:
  SaddleDetected(const std::string& what, double min_eigenvalue)
      : NumericError(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  const char* kind() const noexcept override { return "SaddleDetected"; }

 private:
  double min_eigenvalue_;
};

class SingularInternalBlock : public NumericError {
 public:
  using NumericError::NumericError;
  const char* kind() const noexcept override { return "SingularInternalBlock"; }
};

class NoRootInBracket : public NumericError {
 public:
  using NumericError::NumericError;
  const char* kind() const noexcept override { return "NoRootInBracket"; }
};

class NonPositiveInductiveEnergy : public NumericError {
 public:
  using NumericError::NumericError;
  const char* kind() const noexcept override { return "NonPositiveInductiveEnergy"; }
};

class TargetUnreachable : public NumericError {
 public:
  TargetUnreachable(const std::string& what, double f_min_ghz, double f_max_ghz)
      : NumericError(what), f_min_ghz_(f_min_ghz), f_max_ghz_(f_max_ghz) {}
  double f_min_ghz() const noexcept { return f_min_ghz_; }
  double f_max_ghz() const noexcept { return f_max_ghz_; }
  const char* kind() const noexcept override { return "TargetUnreachable"; }

 private:
  double f_min_ghz_;
  double f_max_ghz_;
};

class MissingConfig : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
  const char* kind() const noexcept override { return "MissingConfig"; }
};

class DuplicateConfig : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
  const char* kind() const noexcept override { return "DuplicateConfig"; }
};

class NotKramersPoint : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
  const char* kind() const noexcept override { return "NotKramersPoint"; }
};

class StepTooLarge : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
  const char* kind() const noexcept override { return "StepTooLarge"; }
};

class SymmetryViolation : public NumericError {
 public:
  using NumericError::NumericError;
  const char* kind() const noexcept override { return "SymmetryViolation"; }
};

class InvalidLogicalFrame : public NumericError {
 public:
  using NumericError::NumericError;
  const char* kind() const noexcept override { return "InvalidLogicalFrame"; }
};

class UnresolvableTransitions : public NumericError {
 public:
  using NumericError::NumericError;
  const char* kind() const noexcept override { return "UnresolvableTransitions"; }
};

class MonotonicityViolation : public NumericError {
 public:
  MonotonicityViolation(const std::string& what, int iteration, double drop)
      : NumericError(what), iteration_(iteration), drop_(drop) {}
  int iteration() const noexcept { return iteration_; }
  double drop() const noexcept { return drop_; }
  const char* kind() const noexcept override { return "MonotonicityViolation"; }

 private:
  int iteration_;
  double drop_;
};

class EndpointNotZero : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
  const char* kind() const noexcept override { return "EndpointNotZero"; }
};

class AmbiguousFrequency : public NumericError {
 public:
  using NumericError::NumericError;
  const char* kind() const noexcept override { return "AmbiguousFrequency"; }
};

class UncorrectableState : public NumericError {
 public:
  using NumericError::NumericError;
  const char* kind() const noexcept override { return "UncorrectableState"; }
};

/// One schema violation, located by a JSON pointer into the config document.
struct SchemaIssue {
  std::string pointer;
  std::string message;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<SchemaIssue> issues);
  ConfigError(std::string pointer, std::string message)
      : ConfigError(std::vector<SchemaIssue>{{std::move(pointer), std::move(message)}}) {}
  const std::vector<SchemaIssue>& issues() const noexcept { return issues_; }
  const char* kind() const noexcept override { return "SchemaViolation"; }

 private:
  std::vector<SchemaIssue> issues_;
};

}  // namespace isene
