// Copyright 2026 The TQSf Authors
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

#ifndef TQSF_ERRORS_H
#define TQSF_ERRORS_H

#include <stdexcept>
#include <string>

namespace tqsf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: bad qubit indices, length mismatches, invalid labels.
class InputError : public Error {
   public:
    using Error::Error;
};

/// The requested problem does not fit the dense simulator or oracle.
class CapacityError : public Error {
   public:
    using Error::Error;
};

/// A measured register integer does not correspond to any attainable eigenvalue.
class DecodeError : public Error {
   public:
    using Error::Error;
};

/// A circuit configuration cannot resolve the spectrum it was built for
/// (e.g. two eigenvalues sharing one register integer).
class ConfigurationError : public Error {
   public:
    using Error::Error;
};

}  // namespace tqsf

#endif  // TQSF_ERRORS_H
