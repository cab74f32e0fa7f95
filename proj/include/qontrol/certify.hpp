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

#ifndef QONTROL_CERTIFY_HPP
#define QONTROL_CERTIFY_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qontrol/closure.hpp"
#include "qontrol/control_system.hpp"

namespace qontrol {

struct DeviceLayout;  // layout.hpp

/// Hardware budget of a design. Tunable couplings are the entangling links
/// switched by composition; static couplings live inside modules. Redundant
/// (unused) couplers declared in a layout are excluded.
struct ResourceCount {
    uint64_t local_controls = 0;
    uint64_t static_couplings = 0;
    uint64_t tunable_couplings = 0;

    bool operator==(const ResourceCount&) const = default;
};

/// A tunable two-body coupling between global qubits qa < qb:
///   sum_{alpha,j} c[alpha][j] * s_alpha^(qa) s_j^(qb),  alpha,j in {X,Y,Z}.
struct EntanglingCoupling {
    uint32_t qubit_a = 0;
    uint32_t qubit_b = 0;
    std::array<Rational, 9> c{};  // row-major, c[3*(alpha-1)+(j-1)]

    static EntanglingCoupling pure_xx(uint32_t qa, uint32_t qb);

    const Rational& at(Letter alpha, Letter j) const;
    Rational& at(Letter alpha, Letter j);
    bool any_nonzero() const;
    /// First nonzero component scanned X..Z major on alpha; the canonical
    /// choice for isolation seeds.
    std::optional<std::pair<Letter, Letter>> first_nonzero() const;
    /// The coupling as a skew operator on a register of `total_qubits`.
    SkewOperator to_operator(uint32_t total_qubits) const;
};

enum class CertStatus : uint8_t { valid, invalid, indeterminate };
const char* cert_status_name(CertStatus s);

/// A compositional controllability certificate. Leaves record one module's
/// concrete control system (at its global qubit positions), content hash and
/// closure outcome; composite nodes join two disjoint certified blocks
/// through one entangling coupling that straddles them.
///
/// Status algebra: a leaf is valid iff its untruncated closure reached full
/// dimension, invalid iff an untruncated closure fell short, indeterminate
/// iff the closure was truncated (guard or caps). A composite is
/// indeterminate if either child is, else valid. Composition refuses
/// invalid children outright, so indeterminate children poison ancestors to
/// indeterminate but never flip anything to invalid.
struct Certificate {
    enum class Kind : uint8_t { direct, composite };

    Kind kind = Kind::direct;
    CertStatus status = CertStatus::invalid;
    std::string reason;  // empty when valid

    // Leaf payload.
    std::shared_ptr<const ControlSystem> system;  // local indexing
    std::vector<uint32_t> qubit_map;              // local -> global
    uint64_t system_hash = 0;
    ClosureReport closure;

    // Composite payload.
    std::shared_ptr<const Certificate> child_a, child_b;
    EntanglingCoupling coupling;  // global qubit ids

    /// Sorted global qubit set covered by this node.
    std::vector<uint32_t> qubits() const;
    uint32_t total_qubits() const;
    uint64_t leaf_count() const;
    uint64_t link_count() const;

    nlohmann::json to_json() const;
    static Certificate from_json(const nlohmann::json& j);
    /// Canonical serialized form; files round-trip byte for byte.
    std::string canonical_text() const;
};

/// Certifies one module by running the closure on its local system. The
/// qubit map fixes where the module sits globally (defaults to identity).
Certificate certify_direct(const ControlSystem& system, const ClosureOptions& options = {},
                           std::vector<uint32_t> qubit_map = {});

/// Joins two certified blocks with `coupling`, one endpoint in each block.
/// Throws qontrol::Error on overlapping blocks, a coupling that misses
/// either block or is identically zero, or an invalid child.
Certificate compose(std::shared_ptr<const Certificate> a, std::shared_ptr<const Certificate> b,
                    const EntanglingCoupling& coupling);

/// Materializes the joint concrete system: embedded module drifts summed,
/// module controls concatenated, plus one control generator per entangling
/// link. Global qubits are re-indexed densely in ascending order.
ControlSystem assemble(const Certificate& cert);

enum class VerifyEffort : uint8_t { none, spot, exhaustive };

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    bool passed = false;
    std::vector<VerifyCheck> checks;
};

/// Re-checks a certificate without trusting its verdicts.
/// none: structural and hash consistency only. spot: additionally re-runs
/// leaf closures on small leaves and replays sampled cross-partition
/// derivations through every link. exhaustive: re-runs every leaf closure
/// and, when the whole device is small enough, re-closes the assembled
/// joint system and compares verdicts.
VerifyReport verify(const Certificate& cert, VerifyEffort effort);

ResourceCount resource_count(const Certificate& cert);
ResourceCount resource_count(const DeviceLayout& layout);

void write_certificate(const Certificate& cert, const std::string& path);
Certificate read_certificate(const std::string& path);

}  // namespace qontrol

#endif
