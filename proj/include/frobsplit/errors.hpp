/*
   Copyright 2026 The frobsplit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FROBSPLIT_ERRORS_HPP
#define FROBSPLIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frobsplit {

/// Malformed or unsupported input: parse errors, unsupported primes,
/// mismatched ambient rings, violated preconditions.
class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A configured bound (degree bound, precision, filtration cap) is too small
/// for the requested computation.
class BoundError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An internal identity failed (e.g. a non-exact division in the Witt
/// structural polynomials). Always a bug.
class InternalError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace frobsplit

#endif
