// Copyright 2026 The qontrol authors
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

#ifndef QONTROL_BUNDLED_SYSTEMS_HPP
#define QONTROL_BUNDLED_SYSTEMS_HPP

#include <string>
#include <vector>

#include "qontrol/control_system.hpp"

namespace qontrol {

/// A named small reference system with its known closure dimension. The
/// dimensions were fixed by the dense matrix oracle and are re-derived by
/// both engines in the test suite.
struct BundledSystem {
    std::string name;
    ControlSystem system;
    uint64_t expected_dimension;
    bool expected_controllable;
};

/// Reference corpus on up to three qubits: controllable and non-controllable
/// designs exercising isolated qubits, commuting generator sets, partial
/// coupling, and full chains.
std::vector<BundledSystem> bundled_small_systems();

}  // namespace qontrol

#endif
