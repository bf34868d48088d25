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

#ifndef GPTSIM_GPTSIM_HPP
#define GPTSIM_GPTSIM_HPP

#include "gptsim/approx.hpp"
#include "gptsim/circuit.hpp"
#include "gptsim/dyadic.hpp"
#include "gptsim/errors.hpp"
#include "gptsim/eval.hpp"
#include "gptsim/io.hpp"
#include "gptsim/matrix.hpp"
#include "gptsim/oracle.hpp"
#include "gptsim/theory.hpp"

#endif
