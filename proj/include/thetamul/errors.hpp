// Copyright 2026 The thetamul Authors.
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

namespace thetamul {

// Base class for every domain error raised by the library. The CLI maps
// these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class IncompatibleCongruences : public Error {
 public:
  using Error::Error;
};

// A bounded search ran out of budget without meeting its postcondition.
class NotFound : public Error {
 public:
  using Error::Error;
};

class InvalidTheta : public Error {
 public:
  using Error::Error;
};

class StrictViolation : public Error {
 public:
  using Error::Error;
};

class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class NormBoundViolation : public Error {
 public:
  using Error::Error;
};

class SlotOverflow : public Error {
 public:
  using Error::Error;
};

class PlanBoundViolation : public Error {
 public:
  using Error::Error;
};

// Raised when an internal identity that must hold by construction fails.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace thetamul
