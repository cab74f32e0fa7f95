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

#include "qontrol/bundled_systems.hpp"

namespace qontrol {

namespace {

SkewOperator op(std::initializer_list<std::pair<const char*, Rational>> terms) {
    std::vector<SkewOperator::Term> t;
    uint32_t n = 0;
    for (const auto& [text, c] : terms) {
        PauliWord w = PauliWord::from_string(text);
        n = w.num_qubits();
        t.emplace_back(std::move(w), c);
    }
    return SkewOperator::from_terms(n, std::move(t));
}

BundledSystem make(std::string name, uint32_t n, SkewOperator drift,
                   std::vector<SkewOperator> controls, uint64_t dim) {
    uint64_t full = (1ULL << (2 * n)) - 1;
    return BundledSystem{std::move(name),
                         ControlSystem(n, std::move(drift), std::move(controls)), dim,
                         dim == full};
}

}  // namespace

std::vector<BundledSystem> bundled_small_systems() {
    std::vector<BundledSystem> out;
    Rational h(1, 2);

    // Single qubit.
    out.push_back(make("q1-standard", 1, op({{"Z", -h}}), {op({{"X", 1}})}, 3));
    out.push_back(make("q1-control-only", 1, SkewOperator::zero(1), {op({{"X", 1}})}, 1));
    out.push_back(make("q1-drift-only", 1, op({{"Z", -h}}), {}, 1));
    out.push_back(make("q1-two-axes", 1, SkewOperator::zero(1),
                       {op({{"X", 1}}), op({{"Y", 1}})}, 3));

    // Two qubits.
    out.push_back(make("q2-chain-end-control", 2,
                       op({{"ZI", -h}, {"IZ", Rational(-1)}, {"XX", 1}, {"YY", 1}}),
                       {op({{"XI", 1}})}, 10));
    out.push_back(make("q2-chain-two-controls", 2,
                       op({{"ZI", -h}, {"IZ", Rational(-1)}, {"XX", 1}, {"YY", 1}}),
                       {op({{"XI", 1}}), op({{"IX", 1}})}, 15));
    out.push_back(make("q2-uncoupled", 2, op({{"ZI", -h}, {"IZ", Rational(-1)}}),
                       {op({{"XI", 1}})}, 4));
    out.push_back(make("q2-ising-x", 2, op({{"ZZ", 1}}), {op({{"XI", 1}})}, 3));
    out.push_back(make("q2-heisenberg-x", 2, op({{"XX", 1}, {"YY", 1}, {"ZZ", 1}}),
                       {op({{"XI", 1}})}, 5));
    out.push_back(make("q2-rich-controls", 2, op({{"ZZ", 1}}),
                       {op({{"XI", 1}}), op({{"YI", 1}}), op({{"IX", 1}})}, 10));

    // Three qubits.
    out.push_back(make("q3-line-mid-control", 3,
                       op({{"ZII", -h},
                           {"IZI", Rational(-1)},
                           {"IIZ", Rational(-3, 2)},
                           {"XXI", 1},
                           {"YYI", 1},
                           {"IXX", 1},
                           {"IYY", 1}}),
                       {op({{"IXI", 1}})}, 36));
    out.push_back(make("q3-line-end-control", 3,
                       op({{"ZII", -h},
                           {"IZI", Rational(-1)},
                           {"IIZ", Rational(-3, 2)},
                           {"XXI", 1},
                           {"YYI", 1},
                           {"IXX", 1},
                           {"IYY", 1}}),
                       {op({{"XII", 1}})}, 21));
    out.push_back(make("q3-line-two-controls", 3,
                       op({{"ZII", -h},
                           {"IZI", Rational(-1)},
                           {"IIZ", Rational(-3, 2)},
                           {"XXI", 1},
                           {"YYI", 1},
                           {"IXX", 1},
                           {"IYY", 1}}),
                       {op({{"XII", 1}}), op({{"IXI", 1}})}, 63));
    out.push_back(make("q3-dangling-qubit", 3,
                       op({{"ZII", -h},
                           {"IZI", Rational(-1)},
                           {"IIZ", Rational(-3, 2)},
                           {"XXI", 1},
                           {"YYI", 1}}),
                       {op({{"XII", 1}})}, 11));
    out.push_back(make("q3-commuting", 3, op({{"ZZI", 1}, {"IZZ", 1}}),
                       {op({{"ZII", 1}})}, 2));

    return out;
}

}  // namespace qontrol
