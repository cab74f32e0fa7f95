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

// Independent verification path: everything here works on dense 2^n x 2^n
// matrices of exact rationals with its own Gaussian elimination. It shares
// no representation or reduction code with the sparse word-level engine.

#include "qontrol/dense_oracle.hpp"

#include <utility>

#include "qontrol/util.hpp"

namespace qontrol {

DenseMatrix DenseMatrix::zero(uint32_t dim) {
    DenseMatrix m;
    m.dim = dim;
    m.re.assign(static_cast<size_t>(dim) * dim, Rational(0));
    m.im.assign(static_cast<size_t>(dim) * dim, Rational(0));
    return m;
}

DenseMatrix DenseMatrix::from_op(const SkewOperator& op) {
    uint32_t n = op.num_qubits();
    if (n > 16) {
        throw Error("dense matrix would be too large");
    }
    uint32_t dim = 1u << n;
    DenseMatrix m = zero(dim);
    for (const auto& [word, coeff] : op.terms()) {
        // Column index: X and Y letters flip the basis bit (qubit 0 is the
        // most significant index bit).
        uint32_t flip = 0;
        for (uint32_t q = 0; q < n; ++q) {
            Letter l = word.letter(q);
            if (l == Letter::X || l == Letter::Y) {
                flip |= 1u << (n - 1 - q);
            }
        }
        for (uint32_t row = 0; row < dim; ++row) {
            uint32_t col = row ^ flip;
            // i-exponent: one from the leading i, plus per qubit
            //   Z: 2 when the row bit is set, Y: 1 when set else 3.
            int e = 1;
            for (uint32_t q = 0; q < n; ++q) {
                uint32_t bit = (row >> (n - 1 - q)) & 1;
                Letter l = word.letter(q);
                if (l == Letter::Z) {
                    e += bit ? 2 : 0;
                } else if (l == Letter::Y) {
                    e += bit ? 1 : 3;
                }
            }
            size_t idx = static_cast<size_t>(row) * dim + col;
            switch (e & 3) {
                case 0:
                    m.re[idx] += coeff;
                    break;
                case 1:
                    m.im[idx] += coeff;
                    break;
                case 2:
                    m.re[idx] -= coeff;
                    break;
                default:
                    m.im[idx] -= coeff;
                    break;
            }
        }
    }
    return m;
}

DenseMatrix DenseMatrix::mult(const DenseMatrix& other) const {
    if (dim != other.dim) {
        throw SizeMismatchError("dense matrix product dimension mismatch");
    }
    DenseMatrix out = zero(dim);
    for (uint32_t i = 0; i < dim; ++i) {
        for (uint32_t k = 0; k < dim; ++k) {
            size_t ik = static_cast<size_t>(i) * dim + k;
            if (sgn(re[ik]) == 0 && sgn(im[ik]) == 0) {
                continue;
            }
            for (uint32_t j = 0; j < dim; ++j) {
                size_t kj = static_cast<size_t>(k) * dim + j;
                size_t ij = static_cast<size_t>(i) * dim + j;
                out.re[ij] += re[ik] * other.re[kj] - im[ik] * other.im[kj];
                out.im[ij] += re[ik] * other.im[kj] + im[ik] * other.re[kj];
            }
        }
    }
    return out;
}

DenseMatrix DenseMatrix::commutator_with(const DenseMatrix& other) const {
    DenseMatrix ab = mult(other);
    DenseMatrix ba = other.mult(*this);
    for (size_t i = 0; i < ab.re.size(); ++i) {
        ab.re[i] -= ba.re[i];
        ab.im[i] -= ba.im[i];
    }
    return ab;
}

bool DenseMatrix::is_zero() const {
    for (const Rational& v : re) {
        if (sgn(v) != 0) {
            return false;
        }
    }
    for (const Rational& v : im) {
        if (sgn(v) != 0) {
            return false;
        }
    }
    return true;
}

bool DenseMatrix::operator==(const DenseMatrix& other) const {
    return dim == other.dim && re == other.re && im == other.im;
}

namespace {

// Flat real coordinates of a matrix: all real parts then all imaginary.
std::vector<Rational> flatten(const DenseMatrix& m) {
    std::vector<Rational> v;
    v.reserve(2 * m.re.size());
    v.insert(v.end(), m.re.begin(), m.re.end());
    v.insert(v.end(), m.im.begin(), m.im.end());
    return v;
}

struct DenseEchelon {
    // Rows kept with their leading coordinate; plain Gaussian elimination.
    std::vector<std::pair<size_t, std::vector<Rational>>> rows;

    bool try_insert(std::vector<Rational> v) {
        for (const auto& [lead, row] : rows) {
            if (sgn(v[lead]) == 0) {
                continue;
            }
            Rational f = v[lead] / row[lead];
            for (size_t i = lead; i < v.size(); ++i) {
                if (sgn(row[i]) != 0) {
                    v[i] -= f * row[i];
                }
            }
        }
        for (size_t i = 0; i < v.size(); ++i) {
            if (sgn(v[i]) != 0) {
                rows.emplace_back(i, std::move(v));
                return true;
            }
        }
        return false;
    }
};

}  // namespace

uint64_t dense_closure_oracle(const ControlSystem& system) {
    uint32_t n = system.num_qubits();
    if (n > 4) {
        throw Error("dense closure oracle is limited to 4 qubits");
    }
    uint64_t full_dim = (1ULL << (2 * n)) - 1;

    std::vector<DenseMatrix> elements;  // accepted, in discovery order
    std::vector<DenseMatrix> generators;
    DenseEchelon span;

    for (const SkewOperator* gen : system.generators()) {
        if (gen->is_zero()) {
            continue;
        }
        DenseMatrix m = DenseMatrix::from_op(*gen);
        if (span.try_insert(flatten(m))) {
            elements.push_back(m);
            generators.push_back(std::move(m));
        }
    }

    size_t depth_begin = 0, depth_end = elements.size();
    while (depth_begin != depth_end && elements.size() < full_dim) {
        size_t next_begin = elements.size();
        for (size_t gi = 0; gi < generators.size(); ++gi) {
            for (size_t ej = depth_begin; ej < depth_end; ++ej) {
                if (depth_begin == 0 && ej <= gi) {
                    continue;
                }
                DenseMatrix c = generators[gi].commutator_with(elements[ej]);
                if (c.is_zero()) {
                    continue;
                }
                if (span.try_insert(flatten(c))) {
                    elements.push_back(std::move(c));
                    if (elements.size() >= full_dim) {
                        return elements.size();
                    }
                }
            }
        }
        depth_begin = next_begin;
        depth_end = elements.size();
    }
    return elements.size();
}

}  // namespace qontrol
