// Copyright 2026 The dpprov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPPROV_ERRORS_H_
#define DPPROV_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dpprov {

// Base class for every error raised by the library. Each subclass maps to a
// distinct CLI exit code (see ExitCodeFor in the CLI).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A publication cohort does not have the size required by the target.
class CohortSizeError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Histograms over different category sets.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// The threshold auction needs a (k+1)-st bidder to set the price.
class ThresholdError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

// An auction outcome refers to consumers that are not in the population.
class MismatchError : public Error {
 public:
  using Error::Error;
};

// Invalid distribution specification, or a model whose density is
// degenerate where a derivative is needed.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Numerical integration did not reach its tolerance.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class RangeError : public Error {
 public:
  RangeError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Marginal cost minus the demand level has no sign change on the bracket.
class NoBracketError : public Error {
 public:
  enum class Side {
    // Marginal cost already exceeds demand at the bracket floor: the
    // regime provides nothing.
    kZeroProvision,
    // Demand exceeds marginal cost on the whole bracket.
    kAboveBracket,
  };
  NoBracketError(const std::string& what, Side side)
      : Error(what), side_(side) {}
  Side side() const { return side_; }

 private:
  Side side_;
};

// Two algebraically identical routes disagreed beyond tolerance.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace dpprov

#endif  // DPPROV_ERRORS_H_
