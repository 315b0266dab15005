// Copyright 2026 The shadowkit Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shadowkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (metric violations, bad documents, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a point set do not.
class SpaceMismatch : public Error {
 public:
  SpaceMismatch() : Error("maps are defined on different spaces") {}
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A search exceeded its configured state budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what, std::size_t budget)
      : Error(what + " exceeded the state budget of " + std::to_string(budget)),
        budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

/// No class-admissible completion exists for a perturbation request.
class Infeasible : public Error {
 public:
  using Error::Error;
};

}  // namespace shadowkit
