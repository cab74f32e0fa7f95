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

#include "qontrol/parameters.hpp"

#include <random>
#include <set>

#include "qontrol/util.hpp"

namespace qontrol {

std::vector<std::string> ParameterizedSystem::parameter_names() const {
    std::vector<std::string> names;
    names.reserve(drift_parts.size());
    for (const auto& [name, part] : drift_parts) {
        names.push_back(name);
    }
    return names;
}

std::vector<Rational> sample_parameters(size_t count, uint64_t seed) {
    // Raw engine draws with explicit modulo, so values depend only on the
    // mt19937_64 stream (no distribution-object variability).
    std::mt19937_64 rng(seed);
    std::set<Rational> seen;
    std::vector<Rational> out;
    out.reserve(count);
    while (out.size() < count) {
        unsigned long num = 1 + static_cast<unsigned long>(rng() % 64);
        unsigned long den = 1 + static_cast<unsigned long>(rng() % 64);
        Rational r(num, den);
        r.canonicalize();
        if (seen.insert(r).second) {
            out.push_back(r);
        }
    }
    return out;
}

ControlSystem instantiate_parameters(const ParameterizedSystem& sys, uint64_t seed) {
    if (sys.num_qubits == 0) {
        throw Error("cannot instantiate a system without qubits");
    }
    std::vector<Rational> values = sample_parameters(sys.drift_parts.size(), seed);
    std::vector<std::pair<Rational, SkewOperator>> weighted;
    weighted.reserve(sys.drift_parts.size());
    for (size_t k = 0; k < sys.drift_parts.size(); ++k) {
        weighted.emplace_back(values[k], sys.drift_parts[k].second);
    }
    SkewOperator drift = weighted.empty() ? SkewOperator::zero(sys.num_qubits)
                                          : scale_add(weighted);
    return ControlSystem(sys.num_qubits, std::move(drift), sys.controls, sys.control_labels);
}

}  // namespace qontrol
