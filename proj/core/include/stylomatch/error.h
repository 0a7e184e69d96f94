// Copyright 2026 The stylomatch Authors. All Rights Reserved.
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

#ifndef STYLOMATCH_ERROR_H_
#define STYLOMATCH_ERROR_H_

#include <stdexcept>
#include <string>

namespace stylomatch {

// Base class for every error raised by the library. Command-line front ends
// map these to exit code 1; usage problems are reported separately.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (corpus records, score files, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// A caller violated an operation's precondition (dimension mismatch,
// non-positive temperature, empty input, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A numerical procedure could not produce a trustworthy result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Model file errors. Each failure mode has its own type so callers can tell
// a newer file apart from a damaged one.
class ModelFileError : public Error {
 public:
  using Error::Error;
};

class UnsupportedVersionError : public ModelFileError {
 public:
  using ModelFileError::ModelFileError;
};

class CorruptPayloadError : public ModelFileError {
 public:
  using ModelFileError::ModelFileError;
};

class ChecksumMismatchError : public ModelFileError {
 public:
  using ModelFileError::ModelFileError;
};

}  // namespace stylomatch

#endif  // STYLOMATCH_ERROR_H_
