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

#include "qontrol/pauli.hpp"

#include <bit>

namespace qontrol {

char letter_char(Letter l) {
    switch (l) {
        case Letter::I:
            return 'I';
        case Letter::X:
            return 'X';
        case Letter::Y:
            return 'Y';
        case Letter::Z:
            return 'Z';
    }
    throw Error("corrupt letter value");
}

Letter letter_from_char(char c) {
    switch (c) {
        case 'I':
            return Letter::I;
        case 'X':
            return Letter::X;
        case 'Y':
            return Letter::Y;
        case 'Z':
            return Letter::Z;
        default:
            throw Error(std::string("not a Pauli letter: '") + c + "'");
    }
}

Letter letter_cycled(Letter l, unsigned steps) {
    if (l == Letter::I) {
        throw Error("cannot cycle the identity letter");
    }
    unsigned v = static_cast<unsigned>(l) - 1;  // 0..2 over X,Y,Z
    return static_cast<Letter>(1 + (v + steps) % 3);
}

PauliWord::PauliWord(uint32_t n) : n_(n) {
    xz_.resize(2 * ((n + 63) / 64), 0);
}

PauliWord PauliWord::identity(uint32_t num_qubits) {
    if (num_qubits == 0) {
        throw Error("a Pauli word needs at least one qubit");
    }
    return PauliWord(num_qubits);
}

PauliWord PauliWord::single(uint32_t num_qubits, uint32_t qubit, Letter l) {
    PauliWord w = identity(num_qubits);
    w.set_letter(qubit, l);
    return w;
}

PauliWord PauliWord::from_string(std::string_view text) {
    if (text.empty()) {
        throw Error("a Pauli word needs at least one qubit");
    }
    PauliWord w = identity(static_cast<uint32_t>(text.size()));
    for (uint32_t q = 0; q < text.size(); ++q) {
        w.set_letter(q, letter_from_char(text[q]));
    }
    return w;
}

PauliWord PauliWord::from_letters(const std::vector<Letter>& letters) {
    PauliWord w = identity(static_cast<uint32_t>(letters.size()));
    for (uint32_t q = 0; q < letters.size(); ++q) {
        w.set_letter(q, letters[q]);
    }
    return w;
}

void PauliWord::set_letter(uint32_t qubit, Letter l) {
    if (qubit >= n_) {
        throw Error("qubit index out of range");
    }
    uint64_t bit = 1ULL << (qubit % 64);
    uint64_t& x = xz_[2 * (qubit / 64)];
    uint64_t& z = xz_[2 * (qubit / 64) + 1];
    x &= ~bit;
    z &= ~bit;
    if (l == Letter::X || l == Letter::Y) {
        x |= bit;
    }
    if (l == Letter::Z || l == Letter::Y) {
        z |= bit;
    }
}

Letter PauliWord::letter(uint32_t qubit) const {
    if (qubit >= n_) {
        throw Error("qubit index out of range");
    }
    uint64_t x = (xz_[2 * (qubit / 64)] >> (qubit % 64)) & 1;
    uint64_t z = (xz_[2 * (qubit / 64) + 1] >> (qubit % 64)) & 1;
    return static_cast<Letter>((x ^ z) + 2 * z);
}

PauliWord PauliWord::with_letter(uint32_t qubit, Letter l) const {
    PauliWord w(*this);
    w.set_letter(qubit, l);
    return w;
}

bool PauliWord::is_identity() const {
    for (uint64_t w : xz_) {
        if (w != 0) {
            return false;
        }
    }
    return true;
}

uint32_t PauliWord::weight() const {
    uint32_t total = 0;
    for (uint32_t w = 0; w < plane_words(); ++w) {
        total += static_cast<uint32_t>(std::popcount(x_plane(w) | z_plane(w)));
    }
    return total;
}

std::vector<uint32_t> PauliWord::support() const {
    std::vector<uint32_t> out;
    for (uint32_t w = 0; w < plane_words(); ++w) {
        uint64_t occupied = x_plane(w) | z_plane(w);
        while (occupied != 0) {
            uint32_t b = static_cast<uint32_t>(std::countr_zero(occupied));
            out.push_back(64 * w + b);
            occupied &= occupied - 1;
        }
    }
    return out;
}

bool PauliWord::commutes_with(const PauliWord& other) const {
    if (n_ != other.n_) {
        throw SizeMismatchError("commutation test on words of different length");
    }
    uint64_t parity = 0;
    for (uint32_t w = 0; w < plane_words(); ++w) {
        parity ^= static_cast<uint64_t>(std::popcount(x_plane(w) & other.z_plane(w)));
        parity ^= static_cast<uint64_t>(std::popcount(z_plane(w) & other.x_plane(w)));
    }
    return (parity & 1) == 0;
}

std::string PauliWord::str() const {
    std::string out(n_, 'I');
    for (uint32_t q = 0; q < n_; ++q) {
        out[q] = letter_char(letter(q));
    }
    return out;
}

std::strong_ordering PauliWord::operator<=>(const PauliWord& o) const {
    if (n_ != o.n_) {
        throw SizeMismatchError("ordering words of different length");
    }
    for (uint32_t w = 0; w < plane_words(); ++w) {
        uint64_t diff = (x_plane(w) ^ o.x_plane(w)) | (z_plane(w) ^ o.z_plane(w));
        if (diff == 0) {
            continue;
        }
        uint32_t b = static_cast<uint32_t>(std::countr_zero(diff));
        uint64_t x1 = (x_plane(w) >> b) & 1, z1 = (z_plane(w) >> b) & 1;
        uint64_t x2 = (o.x_plane(w) >> b) & 1, z2 = (o.z_plane(w) >> b) & 1;
        uint64_t c1 = (x1 ^ z1) + 2 * z1;
        uint64_t c2 = (x2 ^ z2) + 2 * z2;
        return c1 <=> c2;
    }
    return std::strong_ordering::equal;
}

uint64_t PauliWord::hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(n_);
    for (uint64_t w : xz_) {
        mix(w);
    }
    return h;
}

std::string PhasedWord::phase_str() const {
    switch (phase_exponent & 3) {
        case 0:
            return "+1";
        case 1:
            return "+i";
        case 2:
            return "-1";
        default:
            return "-i";
    }
}

PhasedWord word_multiply(const PauliWord& a, const PauliWord& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw SizeMismatchError("product of words of different length");
    }
    PhasedWord out;
    out.word = a;
    int e = 0;
    for (uint32_t w = 0; w < a.plane_words(); ++w) {
        uint64_t x1 = a.x_plane(w), z1 = a.z_plane(w);
        uint64_t x2 = b.x_plane(w), z2 = b.z_plane(w);
        uint64_t x3 = x1 ^ x2, z3 = z1 ^ z2;
        // Per-qubit i-exponent of (i^{x.z} X^x Z^z) composition, summed.
        e += std::popcount(x1 & z1) + std::popcount(x2 & z2) - std::popcount(x3 & z3) +
             2 * std::popcount(z1 & x2);
        out.word.xz_[2 * w] = x3;
        out.word.xz_[2 * w + 1] = z3;
    }
    out.phase_exponent = static_cast<uint8_t>(((e % 4) + 4) % 4);
    return out;
}

bool words_commute(const PauliWord& a, const PauliWord& b) {
    return a.commutes_with(b);
}

}  // namespace qontrol
