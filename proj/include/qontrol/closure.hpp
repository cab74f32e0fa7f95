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

#ifndef QONTROL_CLOSURE_HPP
#define QONTROL_CLOSURE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qontrol/control_system.hpp"
#include "qontrol/skew_op.hpp"

namespace qontrol {

enum class ArithMode : uint8_t { exact, floating };

const char* arith_mode_name(ArithMode m);

/// Resource caps for a closure run. Zero means unlimited.
struct ClosureCaps {
    uint32_t max_depth = 0;
    uint64_t max_dim = 0;
    uint64_t max_brackets = 0;
};

struct ClosureOptions {
    ClosureCaps caps;
    ArithMode arithmetic = ArithMode::exact;
    /// Overrides the 8-qubit safety guard (hard engine limit stays 16).
    bool force = false;
    /// Floating mode only: a candidate survives reduction when its largest
    /// residual coefficient exceeds this fraction of its largest input
    /// coefficient.
    double float_tolerance = 1e-10;
};

/// Outcome record of one closure run. `truncated` means a cap or guard fired
/// before the procedure terminated naturally; a truncated run never claims
/// controllability.
struct ClosureReport {
    uint64_t dimension = 0;
    Int full_dimension = 0;  // 4^n - 1, exact (overflows machine words for large devices)
    bool controllable = false;
    uint32_t max_depth = 0;
    std::vector<uint64_t> depth_profile;  // element count per depth, index 0 = generators
    uint64_t brackets_evaluated = 0;
    ArithMode arithmetic = ArithMode::exact;
    bool truncated = false;
    std::string truncation_reason;  // "", "qubit-guard", "max-depth", "max-dim", "max-brackets"
};

/// An echelonized basis of the generated Lie algebra over the i-Pauli-word
/// coordinates. Rows are primitive integer vectors (content 1, positive
/// leading coefficient) keyed by their leading word in canonical order, so
/// membership tests and residuals are exact.
///
/// The packed-word engine limits bases to 16 qubits.
class LieBasis {
  public:
    explicit LieBasis(uint32_t num_qubits);

    uint32_t num_qubits() const { return n_; }
    size_t size() const { return rows_.size() + raw_rows_.size(); }

    SkewOperator element(size_t index) const;
    std::vector<SkewOperator> elements() const;
    uint32_t depth_of(size_t index) const {
        return index < depths_.size() ? depths_.at(index)
                                      : raw_depths_.at(index - depths_.size());
    }
    PauliWord pivot_word(size_t index) const;
    std::optional<size_t> pivot_position(const PauliWord& w) const;
    std::vector<uint64_t> depth_profile() const;

    /// Exact residual of `op` after elimination against the basis; the zero
    /// operator result means `op` lies in the span.
    SkewOperator reduce_against(const SkewOperator& op) const;

    /// Reduces and, when the residual is nonzero, inserts it as a new
    /// primitive row tagged with `depth`. Returns whether a row was added.
    bool insert_reduced(const SkewOperator& op, uint32_t depth);

  private:
    using Code = uint32_t;
    using Row = std::vector<std::pair<Code, Int>>;

    Row pack(const SkewOperator& op, Rational* scale) const;
    SkewOperator unpack(const Row& row, const Rational& scale) const;
    // In-place elimination against all matching pivots; multiplies the row's
    // implicit scale (row = scale * true residual) as it goes.
    void reduce_row(Row& row, Rational& scale) const;
    void insert_row(Row row, uint32_t depth) const;
    /// Takes ownership of rows that are known independent but not
    /// echelonized (the modular closure tier ends this way). They join the
    /// count immediately; element, pivot and membership accessors trigger
    /// the deferred echelonization.
    void adopt_independent(std::vector<Row> rows, std::vector<uint32_t> depths);
    void ensure_echelonized() const;

    uint32_t n_;
    // Deferred echelonization makes these logically-const caches.
    mutable std::vector<Row> rows_;
    mutable std::vector<uint32_t> depths_;
    mutable std::unordered_map<Code, size_t> pivot_of_;
    mutable std::vector<Row> raw_rows_;
    mutable std::vector<uint32_t> raw_depths_;

    friend std::pair<LieBasis, ClosureReport> lie_closure(const ControlSystem&,
                                                          const ClosureOptions&);
};

/// Runs the depth-layered bracket closure on the system's generator set.
/// Depth 0 holds the reduced generators; each sweep p brackets every depth-0
/// generator with every depth-(p-1) element in a fixed serial order and
/// inserts the independent residuals at depth p. Stops when a sweep adds
/// nothing, when the full dimension 4^n - 1 is reached, or when a cap fires.
///
/// Systems on more than 8 qubits are refused (empty basis, truncated report
/// with reason "qubit-guard") unless options.force is set; more than 16
/// qubits is a hard error.
std::pair<LieBasis, ClosureReport> lie_closure(const ControlSystem& system,
                                               const ClosureOptions& options = {});

/// Convenience wrapper returning only the report.
ClosureReport is_controllable(const ControlSystem& system, const ClosureOptions& options = {});

}  // namespace qontrol

#endif
