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

#ifndef QONTROL_PARAMETERS_HPP
#define QONTROL_PARAMETERS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qontrol/control_system.hpp"
#include "qontrol/skew_op.hpp"

namespace qontrol {

/// A control system whose drift depends linearly on named free parameters
/// (qubit frequencies, coupling strengths): drift = sum_k theta_k * part_k.
/// Controls carry no parameters.
struct ParameterizedSystem {
    uint32_t num_qubits = 0;
    std::vector<std::pair<std::string, SkewOperator>> drift_parts;
    std::vector<SkewOperator> controls;
    std::vector<std::string> control_labels;

    std::vector<std::string> parameter_names() const;
};

/// Draws `count` pairwise-distinct positive rationals with numerator and
/// denominator uniform on [1, 64], by rejection. Fully determined by `seed`.
std::vector<Rational> sample_parameters(size_t count, uint64_t seed);

/// Substitutes seeded sample values for every parameter, in declaration
/// order, producing a concrete ControlSystem. Identical seeds give identical
/// systems byte for byte.
ControlSystem instantiate_parameters(const ParameterizedSystem& sys, uint64_t seed);

}  // namespace qontrol

#endif
