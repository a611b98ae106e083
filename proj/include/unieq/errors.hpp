// Copyright 2026 The unieq Authors
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

namespace unieq {

// Base for every error the library reports. The CLI maps these onto exit
// codes, so the split below is part of the public contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes do not line up (non-square input, mismatched sizes, bad layout).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Float and exact values met in one operation.
class ModeError : public Error {
 public:
  using Error::Error;
};

// Malformed input: bad instance file, bad word string, empty instance.
class InputError : public Error {
 public:
  using Error::Error;
};

// The brute-force engine refused to run past its configured word ceiling.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace unieq
