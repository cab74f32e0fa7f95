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

#ifndef QONTROL_CONTROL_SYSTEM_HPP
#define QONTROL_CONTROL_SYSTEM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qontrol/skew_op.hpp"

namespace qontrol {

/// A bilinear control system on n qubits: one drift generator plus a list of
/// independently actuated control generators, all skew-Hermitian and
/// traceless in the i-Pauli representation. The scalar control amplitudes
/// multiplying each control generator are arbitrary real signals; they play
/// no role in the algebraic controllability decision, which depends only on
/// the generator set {drift, controls...}.
///
/// Identity components are dropped during SkewOperator normalization
/// (from_terms reports it); builders forward that fact through
/// `dropped_identity` so callers can surface a warning.
class ControlSystem {
  public:
    ControlSystem(uint32_t num_qubits, SkewOperator drift, std::vector<SkewOperator> controls,
                  std::vector<std::string> control_labels = {}, bool dropped_identity = false);

    uint32_t num_qubits() const { return n_; }
    const SkewOperator& drift() const { return drift_; }
    const std::vector<SkewOperator>& controls() const { return controls_; }
    const std::vector<std::string>& control_labels() const { return labels_; }
    bool dropped_identity() const { return dropped_identity_; }

    /// Generators in closure order: drift first, then controls in order.
    std::vector<const SkewOperator*> generators() const;

    /// Deterministic text rendering of the whole system; the content hash is
    /// FNV-1a over exactly this text.
    std::string canonical_text() const;
    uint64_t content_hash() const;

  private:
    uint32_t n_;
    SkewOperator drift_;
    std::vector<SkewOperator> controls_;
    std::vector<std::string> labels_;
    bool dropped_identity_;
};

}  // namespace qontrol

#endif
