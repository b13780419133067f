// Copyright 2026 The DTIM Authors.
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

#ifndef DTIM_ERRORS_HPP_
#define DTIM_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtim {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Input graph has no usable edges or nodes.
class EmptyGraphError : public Error {
 public:
  using Error::Error;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(int iterations, double residual)
      : Error("no convergence after " + std::to_string(iterations) +
              " iterations (residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

// Incoming edge weights of a node sum to more than one.
class AdmissibilityError : public Error {
 public:
  AdmissibilityError(std::size_t node, double column_sum)
      : Error("incoming weights of node " + std::to_string(node) + " sum to " +
              std::to_string(column_sum) + " > 1"),
        node_(node),
        column_sum_(column_sum) {}
  std::size_t node() const { return node_; }
  double column_sum() const { return column_sum_; }

 private:
  std::size_t node_;
  double column_sum_;
};

// Exhaustive enumeration would exceed the configured world budget.
class EnumerationLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace dtim

#endif  // DTIM_ERRORS_HPP_
