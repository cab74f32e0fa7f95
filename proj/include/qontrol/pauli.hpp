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

#ifndef QONTROL_PAULI_HPP
#define QONTROL_PAULI_HPP

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qontrol/util.hpp"

namespace qontrol {

/// Single-qubit Pauli letter. The numeric values fix the canonical order
/// I < X < Y < Z used everywhere (term ordering, pivot selection, reports).
enum class Letter : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(Letter l);
Letter letter_from_char(char c);  // throws Error on anything but I/X/Y/Z

/// Advances a non-identity letter around the cycle X -> Y -> Z -> X by
/// `steps` (default 1). The identity is a precondition violation.
Letter letter_cycled(Letter l, unsigned steps = 1);

struct PhasedWord;

/// An n-qubit Pauli word (tensor product of letters), phase-free.
///
/// Stored as two bit planes packed 64 qubits per machine word: x bit set for
/// X and Y, z bit set for Z and Y. Plane words are interleaved
/// [x0, z0, x1, z1, ...] in one inline-capacity vector, so words on up to 64
/// qubits never allocate.
class PauliWord {
  public:
    PauliWord() : n_(0) {}  // empty placeholder; real words come from factories

    static PauliWord identity(uint32_t num_qubits);
    static PauliWord single(uint32_t num_qubits, uint32_t qubit, Letter l);
    /// Builds from a string like "XIZ" (qubit 0 is the leftmost character).
    static PauliWord from_string(std::string_view text);
    static PauliWord from_letters(const std::vector<Letter>& letters);

    uint32_t num_qubits() const { return n_; }
    Letter letter(uint32_t qubit) const;
    /// Returns a copy with one letter replaced.
    PauliWord with_letter(uint32_t qubit, Letter l) const;

    bool is_identity() const;
    /// Number of non-identity letters.
    uint32_t weight() const;
    /// Qubit indices carrying a non-identity letter, ascending.
    std::vector<uint32_t> support() const;

    /// True when this word and `other` commute as operators. Words of equal
    /// length is a precondition (throws SizeMismatchError otherwise).
    bool commutes_with(const PauliWord& other) const;

    std::string str() const;

    bool operator==(const PauliWord& o) const { return n_ == o.n_ && xz_ == o.xz_; }
    bool operator!=(const PauliWord& o) const { return !(*this == o); }
    /// Canonical order: qubit 0 most significant, letters ordered I<X<Y<Z.
    /// Comparing words of different length is a size mismatch.
    std::strong_ordering operator<=>(const PauliWord& o) const;

    uint64_t hash() const;

    // Plane access for phase arithmetic (64 qubits per plane word).
    uint32_t plane_words() const { return static_cast<uint32_t>(xz_.size() / 2); }
    uint64_t x_plane(uint32_t w) const { return xz_[2 * w]; }
    uint64_t z_plane(uint32_t w) const { return xz_[2 * w + 1]; }

  private:
    explicit PauliWord(uint32_t n);
    void set_letter(uint32_t qubit, Letter l);

    uint32_t n_;
    boost::container::small_vector<uint64_t, 4> xz_;

    friend struct PhasedWord;
    friend PhasedWord word_multiply(const PauliWord&, const PauliWord&);
};

/// A Pauli word together with a phase i^k, k in {0,1,2,3}.
struct PhasedWord {
    PauliWord word;
    uint8_t phase_exponent = 0;  // power of i, mod 4

    /// "+1", "+i", "-1" or "-i".
    std::string phase_str() const;
};

/// Product of two equal-length words: a*b = i^k * word. Throws
/// SizeMismatchError on length disagreement.
PhasedWord word_multiply(const PauliWord& a, const PauliWord& b);

/// Free-function form of PauliWord::commutes_with.
bool words_commute(const PauliWord& a, const PauliWord& b);

}  // namespace qontrol

#endif
