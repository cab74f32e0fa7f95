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

#include <random>
#include <vector>

#include "qontrol/control_system.hpp"
#include "qontrol/rational.hpp"
#include "qontrol/skew_op.hpp"

using namespace qontrol;

namespace {

SkewOperator op_of(std::vector<std::pair<const char*, Rational>> terms) {
    std::vector<SkewOperator::Term> t;
    uint32_t n = 0;
    for (auto& [s, c] : terms) {
        PauliWord w = PauliWord::from_string(s);
        n = w.num_qubits();
        t.emplace_back(std::move(w), c);
    }
    return SkewOperator::from_terms(n, std::move(t));
}

// Deterministic small random operator on n qubits.
SkewOperator random_op(uint32_t n, std::mt19937_64& rng) {
    std::vector<SkewOperator::Term> t;
    size_t terms = 1 + rng() % 4;
    for (size_t k = 0; k < terms; ++k) {
        std::vector<Letter> letters;
        for (uint32_t q = 0; q < n; ++q) {
            letters.push_back(static_cast<Letter>(rng() % 4));
        }
        Rational c(1 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 5));
        if (rng() % 2) {
            c = -c;
        }
        t.emplace_back(PauliWord::from_letters(letters), c);
    }
    return SkewOperator::from_terms(n, std::move(t));
}

}  // namespace

TEST_CASE("rational parsing and rendering") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-7/2") == Rational(-7, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5") == Rational(-3, 2));
    CHECK(rational_to_string(Rational(-7, 2)) == "-7/2");
    CHECK(rational_to_string(Rational(4, 2)) == "2");
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK(rational_from_double(0.5) == Rational(1, 2));
    CHECK(rational_from_double(-0.375) == Rational(-3, 8));
}

TEST_CASE("from_terms normalizes") {
    bool dropped = false;
    SkewOperator op = SkewOperator::from_terms(
        2,
        {{PauliWord::from_string("XI"), Rational(1, 2)},
         {PauliWord::from_string("II"), Rational(5)},
         {PauliWord::from_string("XI"), Rational(1, 2)},
         {PauliWord::from_string("ZZ"), Rational(0)},
         {PauliWord::from_string("IY"), Rational(3)}},
        &dropped);
    CHECK(dropped);
    CHECK(op.term_count() == 2);
    CHECK(op.coefficient(PauliWord::from_string("XI")) == Rational(1));
    CHECK(op.coefficient(PauliWord::from_string("IY")) == Rational(3));
    CHECK(op.coefficient(PauliWord::from_string("ZZ")) == Rational(0));
    // Canonical order: IY before XI.
    CHECK(op.terms()[0].first.str() == "IY");
    CHECK(op.str() == "3*i*IY + 1*i*XI");
    CHECK(SkewOperator::zero(2).str() == "0");
    // Exact cancellation produces the zero operator.
    SkewOperator cancel = SkewOperator::from_terms(
        2, {{PauliWord::from_string("XI"), Rational(2, 3)},
            {PauliWord::from_string("XI"), Rational(-2, 3)}});
    CHECK(cancel.is_zero());
}

TEST_CASE("basic single-letter commutators") {
    SkewOperator x = op_of({{"X", 1}});
    SkewOperator y = op_of({{"Y", 1}});
    SkewOperator z = op_of({{"Z", 1}});
    // [iX, iY] = -2 iZ etc (cyclically).
    CHECK(commutator(x, y) == op_of({{"Z", -2}}));
    CHECK(commutator(y, z) == op_of({{"X", -2}}));
    CHECK(commutator(z, x) == op_of({{"Y", -2}}));
    CHECK(commutator(y, x) == op_of({{"Z", 2}}));
    CHECK(commutator(x, x).is_zero());
}

TEST_CASE("commutator is antisymmetric and satisfies Jacobi") {
    std::mt19937_64 rng(12345);
    for (int round = 0; round < 30; ++round) {
        SkewOperator a = random_op(2, rng);
        SkewOperator b = random_op(2, rng);
        SkewOperator c = random_op(2, rng);
        CHECK(commutator(a, b) == -commutator(b, a));
        SkewOperator jacobi = commutator(a, commutator(b, c)) +
                              commutator(b, commutator(c, a)) +
                              commutator(c, commutator(a, b));
        CHECK(jacobi.is_zero());
    }
}

TEST_CASE("scale_add is exact") {
    SkewOperator x = op_of({{"X", 1}});
    SkewOperator combo = scale_add<Rational>({{Rational(1, 3), x}, {Rational(2, 3), x}});
    CHECK(combo == x);
    CHECK((x - x).is_zero());
    CHECK((x + x) == Rational(2) * x);
    CHECK(-(-x) == x);
}

TEST_CASE("embedding") {
    SkewOperator x = op_of({{"X", Rational(1, 2)}});
    CHECK(embed(x, 4, 2) == op_of({{"IIXI", Rational(1, 2)}}));
    SkewOperator xz = op_of({{"XZ", 1}});
    CHECK(embed_at(xz, 4, {2, 0}) == op_of({{"ZIXI", 1}}));
    CHECK_THROWS_AS(embed(xz, 2, 1), SizeMismatchError);
    CHECK_THROWS_AS(embed_at(xz, 4, {1, 1}), SizeMismatchError);
}

TEST_CASE("control system canonical text and hash") {
    SkewOperator drift = op_of({{"ZI", Rational(-1, 2)}, {"XX", 1}, {"YY", 1}});
    SkewOperator c0 = op_of({{"XI", 1}});
    ControlSystem sys(2, drift, {c0}, {"x0"});
    CHECK(sys.num_qubits() == 2);
    CHECK(sys.generators().size() == 2);
    CHECK(*sys.generators()[0] == drift);
    std::string text = sys.canonical_text();
    CHECK(text.find("system qubits=2") != std::string::npos);
    CHECK(text.find("control x0") != std::string::npos);
    ControlSystem same(2, drift, {c0}, {"x0"});
    CHECK(sys.content_hash() == same.content_hash());
    ControlSystem other(2, drift, {c0}, {"u9"});
    CHECK(sys.content_hash() != other.content_hash());
    // Default labels are generated.
    ControlSystem defaulted(2, drift, {c0});
    CHECK(defaulted.control_labels() == std::vector<std::string>{"u0"});
    CHECK_THROWS_AS(ControlSystem(2, drift, {op_of({{"X", 1}})}), SizeMismatchError);
}
