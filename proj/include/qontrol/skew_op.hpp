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

#ifndef QONTROL_SKEW_OP_HPP
#define QONTROL_SKEW_OP_HPP

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qontrol/pauli.hpp"
#include "qontrol/rational.hpp"
#include "qontrol/util.hpp"

namespace qontrol {

namespace detail {
inline std::string coeff_str(const Rational& c) {
    return rational_to_string(c);
}
std::string coeff_str(double c);
inline bool coeff_is_zero(const Rational& c) {
    return sgn(c) == 0;
}
inline bool coeff_is_zero(double c) {
    return c == 0.0;
}
}  // namespace detail

/// A skew-Hermitian operator written as a real combination of phased Pauli
/// words:  sum_w c_w * (i w).  Terms are kept sorted in canonical word order,
/// with no zero coefficients and no identity word (a pure i*identity term is
/// a global phase generator and is dropped on construction).
///
/// The coefficient type is Rational for all public semantics; the double
/// instantiation backs the optional floating-point closure mode.
template <typename C>
class BasicSkewOp {
  public:
    using Term = std::pair<PauliWord, C>;

    BasicSkewOp() : n_(0) {}

    static BasicSkewOp zero(uint32_t num_qubits) {
        BasicSkewOp op;
        op.n_ = num_qubits;
        return op;
    }

    static BasicSkewOp single(const PauliWord& w, C coeff) {
        std::vector<Term> t;
        t.emplace_back(w, std::move(coeff));
        return from_terms(w.num_qubits(), std::move(t));
    }

    /// Normalizing constructor: sorts, merges duplicate words, drops zero
    /// coefficients, drops the identity word. When `dropped_identity` is
    /// given it reports whether an identity term was discarded.
    static BasicSkewOp from_terms(uint32_t num_qubits, std::vector<Term> terms,
                                  bool* dropped_identity = nullptr) {
        bool dropped = false;
        for (const Term& t : terms) {
            if (t.first.num_qubits() != num_qubits) {
                throw SizeMismatchError("operator term length does not match operator qubit count");
            }
        }
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        std::vector<Term> merged;
        merged.reserve(terms.size());
        for (Term& t : terms) {
            if (!merged.empty() && merged.back().first == t.first) {
                merged.back().second += t.second;
            } else {
                merged.push_back(std::move(t));
            }
        }
        BasicSkewOp op;
        op.n_ = num_qubits;
        op.terms_.reserve(merged.size());
        for (Term& t : merged) {
            if (detail::coeff_is_zero(t.second)) {
                continue;
            }
            if (t.first.is_identity()) {
                dropped = true;
                continue;
            }
            op.terms_.push_back(std::move(t));
        }
        if (dropped_identity != nullptr) {
            *dropped_identity = dropped;
        }
        return op;
    }

    uint32_t num_qubits() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    /// Coefficient of `w`, zero if the word is absent.
    C coefficient(const PauliWord& w) const {
        auto it = std::lower_bound(
            terms_.begin(), terms_.end(), w,
            [](const Term& t, const PauliWord& key) { return t.first < key; });
        if (it != terms_.end() && it->first == w) {
            return it->second;
        }
        return C(0);
    }

    /// Canonical text rendering, e.g. "-2*i*ZX + 1/2*i*XX"; "0" when empty.
    std::string str() const {
        if (terms_.empty()) {
            return "0";
        }
        std::ostringstream out;
        bool first = true;
        for (const Term& t : terms_) {
            if (!first) {
                out << " + ";
            }
            first = false;
            out << detail::coeff_str(t.second) << "*i*" << t.first.str();
        }
        return out.str();
    }

    bool operator==(const BasicSkewOp& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const BasicSkewOp& o) const { return !(*this == o); }

    BasicSkewOp operator-() const {
        BasicSkewOp op(*this);
        for (Term& t : op.terms_) {
            t.second = -t.second;
        }
        return op;
    }

  private:
    uint32_t n_;
    std::vector<Term> terms_;
};

using SkewOperator = BasicSkewOp<Rational>;
using FloatSkewOp = BasicSkewOp<double>;

/// Lie bracket [a, b] = ab - ba, closed on this representation: only
/// anticommuting word pairs contribute, each with coefficient +-2 c_a c_b on
/// the product word. Exact in the Rational instantiation.
template <typename C>
BasicSkewOp<C> commutator(const BasicSkewOp<C>& a, const BasicSkewOp<C>& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw SizeMismatchError("commutator of operators on different qubit counts");
    }
    std::vector<typename BasicSkewOp<C>::Term> acc;
    acc.reserve(a.term_count() * b.term_count());
    for (const auto& [wa, ca] : a.terms()) {
        for (const auto& [wb, cb] : b.terms()) {
            if (wa.commutes_with(wb)) {
                continue;
            }
            PhasedWord p = word_multiply(wa, wb);
            // For anticommuting words the product phase is +-i; [i wa, i wb]
            // contributes -2 (phase i) or +2 (phase -i) times i*product.
            C contrib = ca * cb;
            contrib *= (p.phase_exponent == 1) ? C(-2) : C(2);
            acc.emplace_back(std::move(p.word), std::move(contrib));
        }
    }
    return BasicSkewOp<C>::from_terms(a.num_qubits(), std::move(acc));
}

/// Exact linear combination sum_k c_k * op_k. All operands must share one
/// qubit count; an empty list is invalid (no qubit count to infer).
template <typename C>
BasicSkewOp<C> scale_add(const std::vector<std::pair<C, BasicSkewOp<C>>>& parts) {
    if (parts.empty()) {
        throw Error("scale_add of an empty operator list");
    }
    uint32_t n = parts.front().second.num_qubits();
    std::vector<typename BasicSkewOp<C>::Term> acc;
    for (const auto& [c, op] : parts) {
        if (op.num_qubits() != n) {
            throw SizeMismatchError("scale_add of operators on different qubit counts");
        }
        for (const auto& [w, cw] : op.terms()) {
            acc.emplace_back(w, c * cw);
        }
    }
    return BasicSkewOp<C>::from_terms(n, std::move(acc));
}

template <typename C>
BasicSkewOp<C> operator+(const BasicSkewOp<C>& a, const BasicSkewOp<C>& b) {
    return scale_add<C>({{C(1), a}, {C(1), b}});
}

template <typename C>
BasicSkewOp<C> operator-(const BasicSkewOp<C>& a, const BasicSkewOp<C>& b) {
    return scale_add<C>({{C(1), a}, {C(-1), b}});
}

template <typename C>
BasicSkewOp<C> operator*(const C& c, const BasicSkewOp<C>& op) {
    return scale_add<C>({{c, op}});
}

/// Embeds an operator on a contiguous block starting at `offset` into a
/// larger register, identity elsewhere.
template <typename C>
BasicSkewOp<C> embed(const BasicSkewOp<C>& op, uint32_t total_qubits, uint32_t offset) {
    if (offset + op.num_qubits() > total_qubits) {
        throw SizeMismatchError("embed block exceeds target register");
    }
    std::vector<uint32_t> map(op.num_qubits());
    for (uint32_t q = 0; q < op.num_qubits(); ++q) {
        map[q] = offset + q;
    }
    return embed_at(op, total_qubits, map);
}

/// Embeds with an explicit local->global qubit map (entries distinct and in
/// range; one entry per local qubit).
template <typename C>
BasicSkewOp<C> embed_at(const BasicSkewOp<C>& op, uint32_t total_qubits,
                        const std::vector<uint32_t>& qubit_map) {
    if (qubit_map.size() != op.num_qubits()) {
        throw SizeMismatchError("embed map size does not match operator qubit count");
    }
    std::vector<uint32_t> sorted(qubit_map);
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] >= total_qubits || (i > 0 && sorted[i] == sorted[i - 1])) {
            throw SizeMismatchError("embed map entries must be distinct and in range");
        }
    }
    std::vector<typename BasicSkewOp<C>::Term> acc;
    acc.reserve(op.term_count());
    for (const auto& [w, c] : op.terms()) {
        PauliWord big = PauliWord::identity(total_qubits);
        for (uint32_t q = 0; q < op.num_qubits(); ++q) {
            Letter l = w.letter(q);
            if (l != Letter::I) {
                big = big.with_letter(qubit_map[q], l);
            }
        }
        acc.emplace_back(std::move(big), c);
    }
    return BasicSkewOp<C>::from_terms(total_qubits, std::move(acc));
}

}  // namespace qontrol

#endif
