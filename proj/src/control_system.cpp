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

#include "qontrol/control_system.hpp"

#include <sstream>

#include "qontrol/util.hpp"

namespace qontrol {

ControlSystem::ControlSystem(uint32_t num_qubits, SkewOperator drift,
                             std::vector<SkewOperator> controls,
                             std::vector<std::string> control_labels, bool dropped_identity)
    : n_(num_qubits), drift_(std::move(drift)), controls_(std::move(controls)),
      labels_(std::move(control_labels)), dropped_identity_(dropped_identity) {
    if (n_ == 0) {
        throw Error("a control system needs at least one qubit");
    }
    if (drift_.num_qubits() != n_) {
        throw SizeMismatchError("drift qubit count does not match the system");
    }
    for (const SkewOperator& c : controls_) {
        if (c.num_qubits() != n_) {
            throw SizeMismatchError("control qubit count does not match the system");
        }
    }
    if (labels_.empty()) {
        labels_.reserve(controls_.size());
        for (size_t k = 0; k < controls_.size(); ++k) {
            labels_.push_back("u" + std::to_string(k));
        }
    }
    if (labels_.size() != controls_.size()) {
        throw Error("control label count does not match control count");
    }
}

std::vector<const SkewOperator*> ControlSystem::generators() const {
    std::vector<const SkewOperator*> gens;
    gens.reserve(1 + controls_.size());
    gens.push_back(&drift_);
    for (const SkewOperator& c : controls_) {
        gens.push_back(&c);
    }
    return gens;
}

std::string ControlSystem::canonical_text() const {
    std::ostringstream out;
    out << "system qubits=" << n_ << "\n";
    out << "drift " << drift_.str() << "\n";
    for (size_t k = 0; k < controls_.size(); ++k) {
        out << "control " << labels_[k] << " " << controls_[k].str() << "\n";
    }
    return out.str();
}

uint64_t ControlSystem::content_hash() const {
    return fnv1a64(canonical_text());
}

}  // namespace qontrol
