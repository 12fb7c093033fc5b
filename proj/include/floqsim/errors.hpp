// Copyright 2026 The floqsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLOQSIM_ERRORS_HPP
#define FLOQSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace floqsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySector : public Error {
 public:
  using Error::Error;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

class NotInSector : public Error {
 public:
  using Error::Error;
};

class BasisMismatch : public Error {
 public:
  using Error::Error;
};

class NonDiagonalStatic : public Error {
 public:
  using Error::Error;
};

class PeriodicityViolation : public Error {
 public:
  using Error::Error;
};

class CutOutOfRange : public Error {
 public:
  using Error::Error;
};

// Numerical procedures that failed to reach their tolerance. The CLI maps
// every ConvergenceError to exit code 3.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class QuadratureNotConverged : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

class NotConverged : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

class KrylovBreakdown : public ConvergenceError {
 public:
  KrylovBreakdown(const std::string& what, double residual)
      : ConvergenceError(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : Error(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace floqsim

#endif  // FLOQSIM_ERRORS_HPP
