// Copyright 2026 The gptsim Authors
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

#ifndef GPTSIM_ERRORS_HPP
#define GPTSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gptsim {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Incompatible matrix shapes or malformed dimensions.
struct ShapeError : Error {
    using Error::Error;
};

/// A configured resource cap was exceeded (kron size, outcome enumeration,
/// path count, dyadic exponent).
struct CapError : Error {
    using Error::Error;
};

/// Malformed input file or failed validation.
struct ParseError : Error {
    using Error::Error;
};

/// Post-selection guard: selector probability below threshold or zero.
struct PostselectError : Error {
    using Error::Error;
};

/// Sequential sampling requested on a theory that is not certified causal.
struct CausalityError : Error {
    using Error::Error;
};

/// Oracle table queried outside its domain.
struct OracleDomainError : Error {
    using Error::Error;
};

/// Adaptive program is structurally unsound (open wires at termination,
/// bad wiring, jump out of range).
struct StructureError : Error {
    using Error::Error;
};

}  // namespace gptsim

#endif
