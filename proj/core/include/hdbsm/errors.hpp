// Copyright 2026 The hdbsm Authors
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

namespace hdbsm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid dimension, index, factor or digit.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotUnitary : public Error {
 public:
  using Error::Error;
};

// Non-finite amplitude or matrix entry.
class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

// No clock/shift monomial maps the reference Bell state to the target.
class CalibrationFailure : public Error {
 public:
  using Error::Error;
};

class NoAffineLaw : public Error {
 public:
  using Error::Error;
};

class PhaseNotRootOfUnity : public Error {
 public:
  using Error::Error;
};

// No sign convention reproduces the general index law.
class NoneMatch : public Error {
 public:
  using Error::Error;
};

// Two Bell indices claim the same outcome pair.
class Collision : public Error {
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

}  // namespace hdbsm
