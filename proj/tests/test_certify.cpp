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

#include <cstdio>
#include <fstream>
#include <memory>

#include "qontrol/bundled_systems.hpp"
#include "qontrol/certify.hpp"
#include "qontrol/dense_oracle.hpp"
#include "qontrol/layout.hpp"
#include "qontrol/parameters.hpp"

using namespace qontrol;

namespace {

ControlSystem bundled(const char* name) {
    for (const BundledSystem& b : bundled_small_systems()) {
        if (b.name == name) {
            return b.system;
        }
    }
    throw Error("bundled system missing");
}

std::shared_ptr<const Certificate> leaf(const ControlSystem& sys,
                                        std::vector<uint32_t> map = {}) {
    return std::make_shared<Certificate>(certify_direct(sys, {}, std::move(map)));
}

std::string temp_file(const char* stem) {
    return std::string("cert_test_") + stem + ".json";
}

}  // namespace

TEST_CASE("entangling couplings expose their components") {
    EntanglingCoupling c = EntanglingCoupling::pure_xx(2, 5);
    CHECK(c.qubit_a == 2);
    CHECK(c.qubit_b == 5);
    CHECK(c.at(Letter::X, Letter::X) == Rational(1));
    CHECK(c.at(Letter::Z, Letter::Y) == Rational(0));
    CHECK(c.any_nonzero());
    auto first = c.first_nonzero();
    REQUIRE(first.has_value());
    CHECK(first->first == Letter::X);
    CHECK(first->second == Letter::X);
    CHECK_THROWS_AS(c.at(Letter::I, Letter::X), Error);

    SkewOperator op = c.to_operator(6);
    CHECK(op.term_count() == 1);
    CHECK(op.terms().front().first ==
          PauliWord::single(6, 2, Letter::X).with_letter(5, Letter::X));

    EntanglingCoupling zero;
    zero.qubit_a = 0;
    zero.qubit_b = 1;
    CHECK_FALSE(zero.any_nonzero());
    CHECK_FALSE(zero.first_nonzero().has_value());
}

TEST_CASE("a direct certificate records the closure verdict") {
    SUBCASE("controllable module is valid") {
        Certificate cert = certify_direct(bundled("q1-standard"));
        CHECK(cert.kind == Certificate::Kind::direct);
        CHECK(cert.status == CertStatus::valid);
        CHECK(cert.reason.empty());
        CHECK(cert.qubits() == std::vector<uint32_t>{0});
        CHECK(cert.leaf_count() == 1);
        CHECK(cert.link_count() == 0);
        CHECK(cert.closure.dimension == 3);
    }
    SUBCASE("short closure is invalid with the shortfall in the reason") {
        Certificate cert = certify_direct(bundled("q2-chain-end-control"));
        CHECK(cert.status == CertStatus::invalid);
        CHECK(cert.reason.find("10") != std::string::npos);
        CHECK(cert.reason.find("15") != std::string::npos);
    }
    SUBCASE("truncated closure is indeterminate") {
        ClosureOptions opt;
        opt.caps.max_depth = 1;
        Certificate cert = certify_direct(bundled("q3-line-end-control"), opt);
        CHECK(cert.status == CertStatus::indeterminate);
        CHECK(cert.reason.find("truncated") != std::string::npos);
    }
    SUBCASE("qubit maps relocate the module") {
        Certificate cert = certify_direct(bundled("q2-chain-two-controls"), {}, {4, 7});
        CHECK(cert.qubits() == std::vector<uint32_t>{4, 7});
        CHECK(cert.total_qubits() == 2);
        CHECK_THROWS_AS(certify_direct(bundled("q2-chain-two-controls"), {}, {4, 4}), Error);
        CHECK_THROWS_AS(certify_direct(bundled("q2-chain-two-controls"), {}, {4}),
                        SizeMismatchError);
    }
}

TEST_CASE("composition joins disjoint certified blocks") {
    auto a = leaf(bundled("q1-standard"), {0});
    auto b = leaf(bundled("q1-standard"), {1});
    Certificate joined = compose(a, b, EntanglingCoupling::pure_xx(0, 1));
    CHECK(joined.kind == Certificate::Kind::composite);
    CHECK(joined.status == CertStatus::valid);
    CHECK(joined.qubits() == std::vector<uint32_t>{0, 1});
    CHECK(joined.leaf_count() == 2);
    CHECK(joined.link_count() == 1);

    SUBCASE("the assembled joint system is exactly controllable") {
        ControlSystem sys = assemble(joined);
        CHECK(sys.num_qubits() == 2);
        CHECK(sys.control_labels() ==
              std::vector<std::string>{"m0.u0", "m1.u0", "link0"});
        ClosureReport rep = is_controllable(sys);
        CHECK(rep.dimension == 15);
        CHECK(rep.dimension == dense_closure_oracle(sys));
    }
    SUBCASE("three-level nesting accumulates counts") {
        auto c = leaf(bundled("q2-chain-two-controls"), {2, 3});
        Certificate deep = compose(std::make_shared<Certificate>(joined), c,
                                   EntanglingCoupling::pure_xx(1, 2));
        CHECK(deep.status == CertStatus::valid);
        CHECK(deep.leaf_count() == 3);
        CHECK(deep.link_count() == 2);
        CHECK(deep.total_qubits() == 4);
        ControlSystem sys = assemble(deep);
        CHECK(is_controllable(sys).dimension == 255);
    }
}

TEST_CASE("composition refuses structurally bad joins") {
    auto a = leaf(bundled("q1-standard"), {0});
    auto b = leaf(bundled("q1-standard"), {1});
    auto overlapping = leaf(bundled("q1-standard"), {0});
    auto invalid = leaf(bundled("q2-chain-end-control"), {2, 3});

    CHECK_THROWS_AS(compose(a, overlapping, EntanglingCoupling::pure_xx(0, 1)), Error);
    CHECK_THROWS_AS(compose(a, b, EntanglingCoupling::pure_xx(0, 2)), Error);  // misses b
    EntanglingCoupling zero;
    zero.qubit_a = 0;
    zero.qubit_b = 1;
    CHECK_THROWS_AS(compose(a, b, zero), Error);
    CHECK_THROWS_AS(compose(a, invalid, EntanglingCoupling::pure_xx(0, 2)), Error);
    CHECK_THROWS_AS(compose(nullptr, b, EntanglingCoupling::pure_xx(0, 1)), Error);
    // a coupling with both feet in one block does not straddle
    auto wide = leaf(bundled("q2-chain-two-controls"), {2, 3});
    CHECK_THROWS_AS(compose(a, wide, EntanglingCoupling::pure_xx(2, 3)), Error);
}

TEST_CASE("an indeterminate child poisons the composite, never flips it") {
    ClosureOptions capped;
    capped.caps.max_depth = 1;
    auto a = leaf(bundled("q1-standard"), {0});
    auto shaky = std::make_shared<Certificate>(
        certify_direct(bundled("q3-line-two-controls"), capped, {1, 2, 3}));
    REQUIRE(shaky->status == CertStatus::indeterminate);
    Certificate joined = compose(a, shaky, EntanglingCoupling::pure_xx(0, 1));
    CHECK(joined.status == CertStatus::indeterminate);
    CHECK(joined.reason.find("indeterminate") != std::string::npos);
}

TEST_CASE("certificates round-trip through json and disk byte for byte") {
    auto a = leaf(bundled("q2-chain-two-controls"), {0, 1});
    auto b = leaf(bundled("q1-standard"), {2});
    Certificate joined = compose(a, b, EntanglingCoupling::pure_xx(1, 2));

    std::string text = joined.canonical_text();
    Certificate back = Certificate::from_json(joined.to_json());
    CHECK(back.canonical_text() == text);
    CHECK(back.status == joined.status);
    CHECK(back.qubits() == joined.qubits());
    CHECK(back.child_a->system_hash == joined.child_a->system_hash);

    std::string path = temp_file("roundtrip");
    write_certificate(joined, path);
    Certificate from_disk = read_certificate(path);
    CHECK(from_disk.canonical_text() == text);
    write_certificate(from_disk, path + ".2");
    std::ifstream f1(path), f2(path + ".2");
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK(s1 == text);
    std::remove(path.c_str());
    std::remove((path + ".2").c_str());
}

TEST_CASE("reading rejects files that are not certificates") {
    std::string path = temp_file("bad");
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(read_certificate(path), Error);
    {
        std::ofstream out(path);
        out << R"({"format":"other","version":1,"certificate":{}})";
    }
    CHECK_THROWS_AS(read_certificate(path), Error);
    {
        std::ofstream out(path);
        out << R"({"format":"qontrol-certificate","version":9,"certificate":{}})";
    }
    CHECK_THROWS_AS(read_certificate(path), Error);
    CHECK_THROWS_AS(read_certificate("no_such_file.json"), Error);
    std::remove(path.c_str());
}

TEST_CASE("verification re-derives what the certificate claims") {
    auto a = leaf(bundled("q2-chain-two-controls"), {0, 1});
    auto b = leaf(bundled("q2-chain-two-controls"), {2, 3});
    Certificate joined = compose(a, b, EntanglingCoupling::pure_xx(1, 2));

    SUBCASE("an honest certificate passes every effort level") {
        for (VerifyEffort effort :
             {VerifyEffort::none, VerifyEffort::spot, VerifyEffort::exhaustive}) {
            VerifyReport rep = verify(joined, effort);
            CAPTURE(static_cast<int>(effort));
            for (const VerifyCheck& c : rep.checks) {
                CAPTURE(c.name);
                CAPTURE(c.detail);
                CHECK(c.passed);
            }
            CHECK(rep.passed);
        }
        // exhaustive effort on a small composite re-closes the joint system
        VerifyReport rep = verify(joined, VerifyEffort::exhaustive);
        bool joint_checked = false;
        for (const VerifyCheck& c : rep.checks) {
            joint_checked = joint_checked || c.name == "joint-closure";
        }
        CHECK(joint_checked);
    }
    SUBCASE("a flipped verdict is caught structurally") {
        nlohmann::json j = joined.to_json();
        j["children"][0]["status"] = "invalid";
        VerifyReport rep = verify(Certificate::from_json(j), VerifyEffort::none);
        CHECK_FALSE(rep.passed);
    }
    SUBCASE("a tampered system no longer matches its content hash") {
        nlohmann::json j = joined.to_json();
        j["children"][0]["system"]["drift"][0][1] = "9999";
        VerifyReport rep = verify(Certificate::from_json(j), VerifyEffort::none);
        CHECK_FALSE(rep.passed);
        bool hash_failed = false;
        for (const VerifyCheck& c : rep.checks) {
            if (c.name == "content-hashes") {
                hash_failed = !c.passed;
            }
        }
        CHECK(hash_failed);
    }
    SUBCASE("an inflated dimension claim fails the re-closure") {
        nlohmann::json j = joined.to_json();
        // pretend the left module only reached dimension 9 yet call it valid
        j["children"][0]["closure"]["dimension"] = 9;
        Certificate doctored = Certificate::from_json(j);
        VerifyReport spot = verify(doctored, VerifyEffort::spot);
        CHECK_FALSE(spot.passed);
    }
}

TEST_CASE("verification replays derivations across every link") {
    auto a = leaf(bundled("q1-standard"), {0});
    auto b = leaf(bundled("q1-standard"), {1});
    Certificate joined = compose(a, b, EntanglingCoupling::pure_xx(0, 1));
    VerifyReport rep = verify(joined, VerifyEffort::spot);
    bool derivations = false;
    for (const VerifyCheck& c : rep.checks) {
        if (c.name == "joint-derivations") {
            derivations = c.passed;
        }
    }
    CHECK(derivations);
    CHECK(rep.passed);
}

TEST_CASE("resource counts add up through composition") {
    ControlSystem t5a = instantiate_parameters(build_template(TemplateKind::T5), 21);
    ControlSystem t5b = instantiate_parameters(build_template(TemplateKind::T5), 22);
    auto a = std::make_shared<Certificate>(certify_direct(t5a, {}, {0, 1, 2, 3, 4}));
    auto b = std::make_shared<Certificate>(certify_direct(t5b, {}, {5, 6, 7, 8, 9}));
    Certificate joined = compose(a, b, EntanglingCoupling::pure_xx(4, 7));
    CHECK(joined.status == CertStatus::valid);
    ResourceCount rc = resource_count(joined);
    CHECK(rc == ResourceCount{4, 8, 1});
    CHECK(resource_count(*a) == ResourceCount{2, 4, 0});
}
