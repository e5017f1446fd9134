// Copyright 2026 The isodense Authors
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

namespace isodense {

// Every failure raised by the library derives from Error. The C API maps each
// subclass onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of the operation (r < 0, p <= 0,
// lo > hi, overlapping intervals, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation requested on a branch where it is undefined, e.g. a critical
// offset for p <= 1.
class BranchError : public Error {
 public:
  using Error::Error;
};

// Root bracket without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

// Iteration failed to converge or the evolver could not keep a valid curve.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Invalid solver configuration (unsupported quadrature order, bad options).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace isodense
