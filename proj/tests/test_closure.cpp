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

#include <numeric>

#include "qontrol/bundled_systems.hpp"
#include "qontrol/closure.hpp"
#include "qontrol/dense_oracle.hpp"
#include "qontrol/layout.hpp"
#include "qontrol/parameters.hpp"

using namespace qontrol;

namespace {

SkewOperator word_op(const char* text, Rational c = Rational(1)) {
    return SkewOperator::single(PauliWord::from_string(text), c);
}

}  // namespace

TEST_CASE("every bundled system matches the dense-matrix oracle") {
    std::vector<BundledSystem> all = bundled_small_systems();
    CHECK(all.size() >= 10);
    for (const BundledSystem& b : all) {
        CAPTURE(b.name);
        auto [basis, rep] = lie_closure(b.system);
        CHECK(rep.dimension == b.expected_dimension);
        CHECK(rep.controllable == b.expected_controllable);
        CHECK_FALSE(rep.truncated);
        CHECK(rep.dimension == dense_closure_oracle(b.system));
        CHECK(basis.size() == rep.dimension);
    }
}

TEST_CASE("closure controllability flag means dimension 4^n - 1") {
    for (const BundledSystem& b : bundled_small_systems()) {
        CAPTURE(b.name);
        ClosureReport rep = is_controllable(b.system);
        uint64_t full = (1ULL << (2 * b.system.num_qubits())) - 1;
        CHECK(rep.controllable == (rep.dimension == full));
        CHECK(rep.full_dimension == Int(full));
    }
}

TEST_CASE("depth profile partitions the basis by first appearance") {
    // one qubit, drift -Z/2, control X: generators at depth 0, Y at depth 1
    auto [basis, rep] = lie_closure(bundled_small_systems().front().system);
    CHECK(rep.depth_profile == std::vector<uint64_t>{2, 1});
    CHECK(rep.max_depth == 1);
    uint64_t total = std::accumulate(rep.depth_profile.begin(), rep.depth_profile.end(),
                                     uint64_t{0});
    CHECK(total == rep.dimension);
    CHECK(basis.depth_of(0) == 0);
    CHECK(basis.depth_of(2) == 1);
}

TEST_CASE("caps truncate the run and withhold the controllability claim") {
    // 3-qubit chain, end control: untruncated dimension is 21
    ControlSystem sys = [] {
        for (const BundledSystem& b : bundled_small_systems()) {
            if (b.name == "q3-line-end-control") {
                return b.system;
            }
        }
        throw Error("bundled system missing");
    }();

    SUBCASE("depth cap") {
        ClosureOptions opt;
        opt.caps.max_depth = 2;
        auto [basis, rep] = lie_closure(sys, opt);
        CHECK(rep.truncated);
        CHECK(rep.truncation_reason == "max-depth");
        CHECK(rep.max_depth <= 2);
        CHECK(rep.dimension < 21);
        CHECK_FALSE(rep.controllable);
    }
    SUBCASE("dimension cap") {
        ClosureOptions opt;
        opt.caps.max_dim = 10;
        auto [basis, rep] = lie_closure(sys, opt);
        CHECK(rep.truncated);
        CHECK(rep.truncation_reason == "max-dim");
        CHECK(rep.dimension == 10);
    }
    SUBCASE("bracket cap") {
        ClosureOptions opt;
        opt.caps.max_brackets = 5;
        auto [basis, rep] = lie_closure(sys, opt);
        CHECK(rep.truncated);
        CHECK(rep.truncation_reason == "max-brackets");
        CHECK(rep.brackets_evaluated <= 5);
    }
    SUBCASE("generous caps change nothing") {
        ClosureOptions opt;
        opt.caps.max_depth = 64;
        opt.caps.max_dim = 4096;
        opt.caps.max_brackets = 1u << 20;
        auto [basis, rep] = lie_closure(sys, opt);
        CHECK_FALSE(rep.truncated);
        CHECK(rep.dimension == 21);
    }
}

TEST_CASE("qubit guard refuses large registers unless forced") {
    // nine uncoupled qubits with two control axes each: dimension 27
    std::vector<SkewOperator> controls;
    for (uint32_t q = 0; q < 9; ++q) {
        controls.push_back(SkewOperator::single(PauliWord::single(9, q, Letter::X), Rational(1)));
        controls.push_back(SkewOperator::single(PauliWord::single(9, q, Letter::Y), Rational(1)));
    }
    ControlSystem big(9, SkewOperator::zero(9), controls);

    SUBCASE("guard fires without force") {
        auto [basis, rep] = lie_closure(big);
        CHECK(rep.truncated);
        CHECK(rep.truncation_reason == "qubit-guard");
        CHECK(rep.dimension == 0);
        CHECK(basis.size() == 0);
        CHECK_FALSE(rep.controllable);
    }
    SUBCASE("force overrides the guard") {
        ClosureOptions opt;
        opt.force = true;
        auto [basis, rep] = lie_closure(big, opt);
        CHECK_FALSE(rep.truncated);
        CHECK(rep.dimension == 27);
    }
    SUBCASE("the 16-qubit engine limit is a hard error") {
        ControlSystem huge(17, SkewOperator::zero(17),
                           {SkewOperator::single(PauliWord::single(17, 0, Letter::X),
                                                 Rational(1))});
        ClosureOptions opt;
        opt.force = true;
        CHECK_THROWS_AS(lie_closure(huge, opt), Error);
    }
}

TEST_CASE("floating-point mode agrees with exact mode on the bundled corpus") {
    ClosureOptions fopt;
    fopt.arithmetic = ArithMode::floating;
    for (const BundledSystem& b : bundled_small_systems()) {
        CAPTURE(b.name);
        auto [basis, rep] = lie_closure(b.system, fopt);
        CHECK(rep.dimension == b.expected_dimension);
        CHECK(rep.arithmetic == ArithMode::floating);
    }
}

TEST_CASE("instantiated templates close to full dimension for three seeds") {
    for (TemplateKind k : {TemplateKind::T5, TemplateKind::L5, TemplateKind::L4}) {
        uint64_t full = template_size(k) == 5 ? 1023 : 255;
        for (uint64_t seed : {1, 2, 3}) {
            CAPTURE(template_name(k));
            CAPTURE(seed);
            ControlSystem sys = instantiate_parameters(build_template(k), seed);
            ClosureReport rep = is_controllable(sys);
            CHECK(rep.dimension == full);
            CHECK(rep.controllable);
            CHECK_FALSE(rep.truncated);
        }
    }
}

TEST_CASE("floating-point mode confirms the T-shaped template") {
    ControlSystem sys = instantiate_parameters(build_template(TemplateKind::T5), 1);
    ClosureOptions fopt;
    fopt.arithmetic = ArithMode::floating;
    ClosureReport rep = is_controllable(sys, fopt);
    CHECK(rep.dimension == 1023);
    CHECK(rep.controllable);
}

TEST_CASE("closure is deterministic run to run") {
    ControlSystem sys = instantiate_parameters(build_template(TemplateKind::L5), 7);
    auto [b1, r1] = lie_closure(sys);
    auto [b2, r2] = lie_closure(sys);
    CHECK(r1.dimension == r2.dimension);
    CHECK(r1.depth_profile == r2.depth_profile);
    CHECK(r1.brackets_evaluated == r2.brackets_evaluated);
    REQUIRE(b1.size() == b2.size());
    for (size_t i = 0; i < b1.size(); i += 97) {
        CHECK(b1.pivot_word(i) == b2.pivot_word(i));
        CHECK(b1.element(i).str() == b2.element(i).str());
    }
}

TEST_CASE("the closure basis answers membership queries exactly") {
    auto [basis, rep] = lie_closure(bundled_small_systems().front().system);  // q1-standard
    REQUIRE(rep.dimension == 3);
    CHECK(basis.reduce_against(word_op("X")).is_zero());
    CHECK(basis.reduce_against(word_op("Y", Rational(7, 3))).is_zero());
    CHECK(basis.reduce_against(word_op("Z", Rational(-2))).is_zero());
    // already-spanned operators are not inserted again
    LieBasis copy = basis;
    CHECK_FALSE(copy.insert_reduced(word_op("X", Rational(5)), 9));
    CHECK(copy.size() == 3);
    // pivot lookup round-trips
    auto pos = basis.pivot_position(PauliWord::from_string("X"));
    REQUIRE(pos.has_value());
    CHECK(basis.pivot_word(*pos) == PauliWord::from_string("X"));
}

TEST_CASE("uncoupled registers stay factored") {
    // two disjoint singly-controlled qubits never entangle: dimension 2 * 2
    std::vector<SkewOperator::Term> dt;
    dt.emplace_back(PauliWord::from_string("ZI"), Rational(-1, 2));
    dt.emplace_back(PauliWord::from_string("IZ"), Rational(-1));
    ControlSystem sys(2, SkewOperator::from_terms(2, std::move(dt)),
                      {word_op("XI"), word_op("IX")});
    auto [basis, rep] = lie_closure(sys);
    CHECK(rep.dimension == 6);  // {X,Y,Z} on each factor
    CHECK_FALSE(rep.controllable);
}
