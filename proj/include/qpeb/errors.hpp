// Copyright 2026 The qpeb developers
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

namespace qpeb {

/// Base class for all qpeb errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (bad dimensions, non-finite entries,
/// unparsable files). Maps to CLI exit code 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that an operation cannot accept, e.g. a channel whose
/// Kraus rank exceeds the requested subspace dimension. Maps to CLI exit
/// code 3.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed after a computation that should have
/// succeeded. Maps to CLI exit code 1.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpeb
