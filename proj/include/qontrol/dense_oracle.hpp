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

#ifndef QONTROL_DENSE_ORACLE_HPP
#define QONTROL_DENSE_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "qontrol/control_system.hpp"
#include "qontrol/rational.hpp"
#include "qontrol/skew_op.hpp"

namespace qontrol {

/// Dense complex matrix with exact rational entries, row-major. This is the
/// independent cross-check path: it shares no representation or elimination
/// code with the sparse word-level engine.
struct DenseMatrix {
    uint32_t dim = 0;
    std::vector<Rational> re, im;

    static DenseMatrix zero(uint32_t dim);
    /// Materializes a skew operator sum_w c_w * (i w) as a 2^n x 2^n matrix.
    static DenseMatrix from_op(const SkewOperator& op);

    DenseMatrix mult(const DenseMatrix& other) const;
    DenseMatrix commutator_with(const DenseMatrix& other) const;
    bool is_zero() const;
    bool operator==(const DenseMatrix& other) const;
};

/// Closure dimension computed entirely on dense matrices with dense
/// Gaussian elimination over the rationals. Guarded at 4 qubits (throws
/// qontrol::Error beyond that).
uint64_t dense_closure_oracle(const ControlSystem& system);

}  // namespace qontrol

#endif
