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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "qontrol/pauli.hpp"

using namespace qontrol;

TEST_CASE("letters and characters round-trip") {
    CHECK(letter_char(Letter::I) == 'I');
    CHECK(letter_char(Letter::X) == 'X');
    CHECK(letter_char(Letter::Y) == 'Y');
    CHECK(letter_char(Letter::Z) == 'Z');
    CHECK(letter_from_char('X') == Letter::X);
    CHECK_THROWS_AS(letter_from_char('Q'), Error);
}

TEST_CASE("letter cycling X -> Y -> Z -> X") {
    CHECK(letter_cycled(Letter::X) == Letter::Y);
    CHECK(letter_cycled(Letter::Y) == Letter::Z);
    CHECK(letter_cycled(Letter::Z) == Letter::X);
    CHECK(letter_cycled(Letter::X, 2) == Letter::Z);
    CHECK(letter_cycled(Letter::Z, 2) == Letter::Y);
    CHECK(letter_cycled(Letter::Y, 3) == Letter::Y);
}

TEST_CASE("word construction and rendering") {
    PauliWord w = PauliWord::from_string("XIZY");
    CHECK(w.num_qubits() == 4);
    CHECK(w.letter(0) == Letter::X);
    CHECK(w.letter(1) == Letter::I);
    CHECK(w.letter(2) == Letter::Z);
    CHECK(w.letter(3) == Letter::Y);
    CHECK(w.str() == "XIZY");
    CHECK(w.weight() == 3);
    CHECK(w.support() == std::vector<uint32_t>{0, 2, 3});
    CHECK_FALSE(w.is_identity());
    CHECK(PauliWord::identity(3).is_identity());
    CHECK(PauliWord::identity(3).str() == "III");
    CHECK(PauliWord::single(3, 1, Letter::Y).str() == "IYI");
    CHECK(w.with_letter(1, Letter::Z).str() == "XZZY");
    CHECK(w.with_letter(0, Letter::I).str() == "IIZY");
    CHECK_THROWS_AS(PauliWord::from_string("XQZ"), Error);
}

TEST_CASE("from_letters matches from_string") {
    PauliWord a = PauliWord::from_letters({Letter::Z, Letter::I, Letter::X});
    CHECK(a == PauliWord::from_string("ZIX"));
}

TEST_CASE("canonical order is qubit-0 major with I<X<Y<Z") {
    std::vector<PauliWord> words;
    const char* alphabet = "IXYZ";
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            std::string s{alphabet[a], alphabet[b]};
            words.push_back(PauliWord::from_string(s));
        }
    }
    // Already generated in canonical order; sorting must not reorder.
    std::vector<PauliWord> sorted = words;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == words);
    CHECK(PauliWord::from_string("IZ") < PauliWord::from_string("XI"));
    CHECK(PauliWord::from_string("XI") < PauliWord::from_string("XX"));
}

TEST_CASE("single-qubit product phase table") {
    auto mult = [](char a, char b) {
        PhasedWord p = word_multiply(PauliWord::from_string(std::string(1, a)),
                                     PauliWord::from_string(std::string(1, b)));
        return std::make_pair(p.word.str(), int(p.phase_exponent));
    };
    CHECK(mult('X', 'Y') == std::make_pair(std::string("Z"), 1));   // XY = iZ
    CHECK(mult('Y', 'X') == std::make_pair(std::string("Z"), 3));   // YX = -iZ
    CHECK(mult('Y', 'Z') == std::make_pair(std::string("X"), 1));   // YZ = iX
    CHECK(mult('Z', 'Y') == std::make_pair(std::string("X"), 3));   // ZY = -iX
    CHECK(mult('Z', 'X') == std::make_pair(std::string("Y"), 1));   // ZX = iY
    CHECK(mult('X', 'Z') == std::make_pair(std::string("Y"), 3));   // XZ = -iY
    CHECK(mult('X', 'X') == std::make_pair(std::string("I"), 0));
    CHECK(mult('Y', 'Y') == std::make_pair(std::string("I"), 0));
    CHECK(mult('Z', 'Z') == std::make_pair(std::string("I"), 0));
    CHECK(mult('I', 'Y') == std::make_pair(std::string("Y"), 0));
    CHECK(mult('Z', 'I') == std::make_pair(std::string("Z"), 0));
}

TEST_CASE("product phases multiply across qubits") {
    // (X⊗Y) * (Y⊗X) = (i Z)⊗(-i Z) = Z⊗Z
    PhasedWord p =
        word_multiply(PauliWord::from_string("XY"), PauliWord::from_string("YX"));
    CHECK(p.word.str() == "ZZ");
    CHECK(p.phase_exponent == 0);
    // (X⊗Y) * (Y⊗Z) = (i Z)⊗(i X) = - Z⊗X
    p = word_multiply(PauliWord::from_string("XY"), PauliWord::from_string("YZ"));
    CHECK(p.word.str() == "ZX");
    CHECK(p.phase_exponent == 2);
    CHECK(p.phase_str() == "-1");
}

TEST_CASE("phase strings") {
    CHECK(PhasedWord{PauliWord::identity(1), 0}.phase_str() == "+1");
    CHECK(PhasedWord{PauliWord::identity(1), 1}.phase_str() == "+i");
    CHECK(PhasedWord{PauliWord::identity(1), 2}.phase_str() == "-1");
    CHECK(PhasedWord{PauliWord::identity(1), 3}.phase_str() == "-i");
}

TEST_CASE("commutation matches the symplectic form") {
    auto commutes = [](const char* a, const char* b) {
        return words_commute(PauliWord::from_string(a), PauliWord::from_string(b));
    };
    CHECK_FALSE(commutes("X", "Y"));
    CHECK_FALSE(commutes("Y", "Z"));
    CHECK(commutes("X", "X"));
    CHECK(commutes("X", "I"));
    // Two anticommuting factors make the words commute overall.
    CHECK(commutes("XX", "YY"));
    CHECK_FALSE(commutes("XI", "YY"));
    CHECK(commutes("XYZ", "XYZ"));
    CHECK_FALSE(commutes("XYZ", "XYX"));
    CHECK_THROWS_AS(words_commute(PauliWord::from_string("X"), PauliWord::from_string("XX")),
                    SizeMismatchError);
}

TEST_CASE("exhaustive two-qubit commutation against multiplication") {
    // [a,b] = 0 iff ab and ba carry the same phase.
    const char* alphabet = "IXYZ";
    for (int a = 0; a < 16; ++a) {
        for (int b = 0; b < 16; ++b) {
            std::string sa{alphabet[a / 4], alphabet[a % 4]};
            std::string sb{alphabet[b / 4], alphabet[b % 4]};
            PauliWord wa = PauliWord::from_string(sa);
            PauliWord wb = PauliWord::from_string(sb);
            PhasedWord ab = word_multiply(wa, wb);
            PhasedWord ba = word_multiply(wb, wa);
            CHECK(ab.word == ba.word);
            bool same_phase = ab.phase_exponent == ba.phase_exponent;
            CHECK(wa.commutes_with(wb) == same_phase);
        }
    }
}

TEST_CASE("words spanning several plane words") {
    PauliWord w = PauliWord::identity(70);
    w = w.with_letter(0, Letter::X)
            .with_letter(63, Letter::Y)
            .with_letter(64, Letter::Z)
            .with_letter(69, Letter::X);
    CHECK(w.num_qubits() == 70);
    CHECK(w.plane_words() == 2);
    CHECK(w.letter(0) == Letter::X);
    CHECK(w.letter(63) == Letter::Y);
    CHECK(w.letter(64) == Letter::Z);
    CHECK(w.letter(69) == Letter::X);
    CHECK(w.letter(33) == Letter::I);
    CHECK(w.weight() == 4);
    CHECK(w.support() == std::vector<uint32_t>{0, 63, 64, 69});

    PauliWord v = PauliWord::single(70, 64, Letter::X);
    CHECK_FALSE(w.commutes_with(v));  // Z vs X at qubit 64
    PhasedWord p = word_multiply(v, w);
    CHECK(p.word.letter(64) == Letter::Y);  // X*Z = -iY
    CHECK(p.phase_exponent == 3);
    CHECK(v < w);  // v is identity at qubit 0, w carries X there
}

TEST_CASE("ordering across planes is qubit-0 major") {
    // v has I at qubit 0, w has X there, so v < w regardless of later qubits.
    PauliWord w = PauliWord::single(70, 0, Letter::X);
    PauliWord v = PauliWord::single(70, 64, Letter::Z);
    CHECK(v < w);
    CHECK(w > v);
    CHECK(PauliWord::single(70, 64, Letter::X) < PauliWord::single(70, 64, Letter::Y));
    CHECK(PauliWord::single(70, 63, Letter::Z) > PauliWord::single(70, 64, Letter::Z));
}

TEST_CASE("hashes are stable and collision-free on small sets") {
    std::set<uint64_t> seen;
    const char* alphabet = "IXYZ";
    for (int a = 0; a < 64; ++a) {
        std::string s{alphabet[a / 16], alphabet[(a / 4) % 4], alphabet[a % 4]};
        PauliWord w = PauliWord::from_string(s);
        CHECK(w.hash() == PauliWord::from_string(s).hash());
        seen.insert(w.hash());
    }
    CHECK(seen.size() == 64);
}
