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

#ifndef QONTROL_MOVES_HPP
#define QONTROL_MOVES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qontrol/skew_op.hpp"

namespace qontrol {

/// Splits a register into side A (listed qubits) and side B (the rest).
/// Used to constrain derivation moves so every gadget acts within one side.
struct Partition {
    uint32_t num_qubits = 0;
    std::vector<uint32_t> side_a;  // sorted, distinct, in range

    static Partition of(uint32_t num_qubits, std::vector<uint32_t> side_a);
    bool in_a(uint32_t qubit) const;
    std::vector<uint32_t> side_b() const;
};

enum class MoveKind : uint8_t { cyc, gen, rem };
enum class Side : uint8_t { A, B };

/// One elementary index move applied to a single cross term. `pos` is the
/// position acted on; `anchor` is the already-occupied partner position for
/// gen/rem (unused for cyc). `j` records the Pauli index written or advanced
/// at `pos`, `k` the index at the anchor, for the audit trail.
struct IndexMove {
    MoveKind kind = MoveKind::cyc;
    Side side = Side::A;
    uint32_t pos = 0;
    uint32_t anchor = 0;
    Letter j = Letter::I;
    Letter k = Letter::I;

    std::string str() const;  // one "MOVE ..." trace line
    static IndexMove parse(const std::string& line);
    bool operator==(const IndexMove&) const = default;
};

/// The three constructive primitives. Each takes a single-term operator
/// c * (i w), applies the bracket gadget built from embedded one- and
/// two-letter words via commutator(), and returns the single-term result
/// with the coefficient c preserved exactly.
///
/// f_cyc: advances the non-identity letter at `pos` one step around
/// X -> Y -> Z -> X using -(1/2)[i s_{j+2}, . ].
SkewOperator f_cyc(const SkewOperator& term, uint32_t pos);

/// f_gen: installs letter `j` at identity position `pos`, anchored on the
/// non-identity position `anchor`, using -(1/4)[i s_{k+1}^(anchor), [i s_j^(pos) s_{k+1}^(anchor), . ]].
SkewOperator f_gen(const SkewOperator& term, uint32_t pos, uint32_t anchor, Letter j);

/// f_rem: clears the non-identity letter at `pos`, anchored on the distinct
/// non-identity position `anchor`; the mirror of f_gen.
SkewOperator f_rem(const SkewOperator& term, uint32_t pos, uint32_t anchor);

/// Applies one recorded move (dispatches on kind; checks the recorded
/// indices against the operand for auditability).
SkewOperator apply_move(const SkewOperator& term, const IndexMove& move);

/// A planned route from one seed cross term to a target word: replaying the
/// moves in order turns `seed` into `coefficient * i * target` with the
/// seed's coefficient preserved exactly.
struct DerivationPath {
    SkewOperator seed;
    PauliWord target;
    std::vector<IndexMove> moves;

    SkewOperator replay() const;
    /// Text trace: one header line, then one line per move.
    std::string trace() const;
};

/// Isolates one coupling component from a two-body coupling operator
/// sum_{alpha,j} c_{alpha,j} s_alpha^(qa) s_j^(qb) by the double-bracket
/// filter on each side, yielding the exact single term
/// 16 c_{alpha,j} * i * s_{alpha+1}^(qa) s_{j+1}^(qb).
/// Throws qontrol::Error when c_{alpha,j} is zero, listing the nonzero
/// components so the caller can re-target.
SkewOperator isolate_coupling_term(const SkewOperator& coupling, uint32_t qubit_a,
                                   uint32_t qubit_b, Letter alpha, Letter j);

/// Plans a move sequence from a single cross term to `target`. The seed must
/// have exactly one non-identity letter in each side of the partition; the
/// target must have at least one in each. Planning is deterministic: per
/// side, gen moves install target letters at missing positions in ascending
/// order (anchored at the lowest occupied position), one rem clears the seed
/// position when it is not in the target support, then cyc moves fix
/// remaining letters.
DerivationPath plan_derivation(const SkewOperator& seed, const PauliWord& target,
                               const Partition& part);

struct AuditReport {
    uint64_t samples = 0;
    uint64_t passes = 0;
    uint64_t failures = 0;
    std::vector<std::string> failure_notes;

    bool all_passed() const { return failures == 0 && samples > 0; }
};

/// Draws `samples` random cross words (uniform letters, rejection until both
/// sides are touched), plans a derivation from `seed` to each, replays it,
/// and checks the exact result. Fully determined by `rng_seed`.
AuditReport sample_basis_audit(const SkewOperator& seed, const Partition& part, uint64_t samples,
                               uint64_t rng_seed);

/// Exhaustive variant over every cross word of the register (guarded to
/// small registers; throws qontrol::Error when 4^n exceeds 2^20).
AuditReport exhaustive_basis_audit(const SkewOperator& seed, const Partition& part);

}  // namespace qontrol

#endif
