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
//
// Release gate: each check prints exactly one pass/fail line. The checks
// exercise the full artifact surface end to end; the suite exits nonzero
// when any line fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qontrol/bundled_systems.hpp"
#include "qontrol/certify.hpp"
#include "qontrol/closure.hpp"
#include "qontrol/dense_oracle.hpp"
#include "qontrol/layout.hpp"
#include "qontrol/moves.hpp"
#include "qontrol/parameters.hpp"

using namespace qontrol;

namespace {

struct CheckFailed {
    std::string why;
};

void expect(bool ok, const std::string& why) {
    if (!ok) {
        throw CheckFailed{why};
    }
}

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string layout_path(const char* file) {
    return std::string(QONTROL_LAYOUT_DIR) + "/" + file;
}

// ---- pieces shared by several checks ----

SkewOperator line_drift(uint32_t n) {
    // distinct frequencies, generic couplings: -(w_q/2) Z_q + J_b (XX+YY)
    std::vector<SkewOperator::Term> t;
    for (uint32_t q = 0; q < n; ++q) {
        t.emplace_back(PauliWord::single(n, q, Letter::Z), Rational(-(3 + 2 * (int)q), 2));
    }
    for (uint32_t b = 0; b + 1 < n; ++b) {
        PauliWord xx = PauliWord::single(n, b, Letter::X).with_letter(b + 1, Letter::X);
        PauliWord yy = PauliWord::single(n, b, Letter::Y).with_letter(b + 1, Letter::Y);
        t.emplace_back(xx, Rational(2 * (int)b + 1, 2));
        t.emplace_back(yy, Rational(2 * (int)b + 1, 2));
    }
    return SkewOperator::from_terms(n, std::move(t));
}

// controllable blocks of one, two and three qubits
ControlSystem block(uint32_t n) {
    std::vector<SkewOperator> controls;
    controls.push_back(SkewOperator::single(PauliWord::single(n, 0, Letter::X), Rational(1)));
    if (n > 1) {
        controls.push_back(
            SkewOperator::single(PauliWord::single(n, 1, Letter::X), Rational(1)));
    }
    return ControlSystem(n, line_drift(n), controls);
}

std::vector<PauliWord> all_words(uint32_t n) {
    std::vector<PauliWord> out;
    for (uint64_t code = 0; code < (1ULL << (2 * n)); ++code) {
        std::vector<Letter> letters(n);
        for (uint32_t q = 0; q < n; ++q) {
            letters[q] = static_cast<Letter>((code >> (2 * (n - 1 - q))) & 3);
        }
        out.push_back(PauliWord::from_letters(letters));
    }
    return out;
}

bool is_single(const SkewOperator& op, const PauliWord& w, const Rational& c) {
    return op.term_count() == 1 && op.terms().front().first == w &&
           op.terms().front().second == c;
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(QONTROL_BIN) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    expect(pipe != nullptr, "failed to launch the binary");
    char buf[4096];
    size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
        r.output.append(buf, got);
    }
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

// ---- the nine checks ----

void check_1_template_full_dimension() {
    for (uint64_t seed : {1, 2, 3}) {
        ControlSystem sys = instantiate_parameters(build_template(TemplateKind::T5), seed);
        ClosureReport rep = is_controllable(sys);
        expect(!rep.truncated, "closure truncated at seed " + std::to_string(seed));
        expect(rep.dimension == 1023,
               "seed " + std::to_string(seed) + " reached " +
                   std::to_string(rep.dimension) + " of 1023");
        expect(rep.controllable, "controllability flag missing");
        expect(rep.arithmetic == ArithMode::exact, "wrong arithmetic mode");
    }
}

void check_2_composition_soundness() {
    std::vector<std::pair<uint32_t, uint32_t>> pairings = {
        {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}};

    // the 9 one-component couplings plus 3 random dense matrices
    std::vector<std::array<Rational, 9>> sweeps;
    for (int a = 0; a < 3; ++a) {
        for (int j = 0; j < 3; ++j) {
            std::array<Rational, 9> c{};
            c[3 * a + j] = Rational(1);
            sweeps.push_back(c);
        }
    }
    std::mt19937_64 rng(424242);
    for (int k = 0; k < 3; ++k) {
        std::array<Rational, 9> c{};
        bool nonzero = false;
        for (auto& v : c) {
            int num = static_cast<int>(rng() % 7) - 3;  // -3..3
            int den = static_cast<int>(rng() % 4) + 1;  // 1..4
            v = Rational(num, den);
            nonzero = nonzero || num != 0;
        }
        if (!nonzero) {
            c[4] = Rational(1, 2);
        }
        sweeps.push_back(c);
    }

    for (auto [na, nb] : pairings) {
        ControlSystem sys_a = block(na);
        ControlSystem sys_b = block(nb);
        std::vector<uint32_t> map_a(na), map_b(nb);
        for (uint32_t q = 0; q < na; ++q) {
            map_a[q] = q;
        }
        for (uint32_t q = 0; q < nb; ++q) {
            map_b[q] = na + q;
        }
        auto ca = std::make_shared<Certificate>(certify_direct(sys_a, {}, map_a));
        auto cb = std::make_shared<Certificate>(certify_direct(sys_b, {}, map_b));
        std::string tag = std::to_string(na) + "+" + std::to_string(nb);
        expect(ca->status == CertStatus::valid, "left module " + tag + " not certified");
        expect(cb->status == CertStatus::valid, "right module " + tag + " not certified");

        uint32_t n = na + nb;
        uint64_t full = (1ULL << (2 * n)) - 1;
        for (size_t ci = 0; ci < sweeps.size(); ++ci) {
            EntanglingCoupling coupling;
            coupling.qubit_a = na - 1;
            coupling.qubit_b = na;
            coupling.c = sweeps[ci];
            Certificate joined = compose(ca, cb, coupling);
            expect(joined.status == CertStatus::valid,
                   tag + " coupling " + std::to_string(ci) + ": composite not valid");
            ClosureReport rep = is_controllable(assemble(joined));
            expect(!rep.truncated, tag + ": joint closure truncated");
            expect(rep.dimension == full,
                   tag + " coupling " + std::to_string(ci) + ": dimension " +
                       std::to_string(rep.dimension) + " of " + std::to_string(full));
        }
    }
}

void check_3_move_identities() {
    const Rational c(-22, 7);
    uint64_t checked = 0;
    for (uint32_t n = 1; n <= 3; ++n) {
        for (const PauliWord& w : all_words(n)) {
            SkewOperator term = SkewOperator::single(w, c);
            for (uint32_t pos = 0; pos < n; ++pos) {
                if (w.letter(pos) != Letter::I) {
                    PauliWord want = w.with_letter(pos, letter_cycled(w.letter(pos), 1));
                    expect(is_single(f_cyc(term, pos), want, c),
                           "cycle mismatch at " + w.str());
                    ++checked;
                }
                for (uint32_t anchor = 0; anchor < n; ++anchor) {
                    if (anchor == pos || w.letter(anchor) == Letter::I) {
                        continue;
                    }
                    if (w.letter(pos) == Letter::I) {
                        for (Letter j : {Letter::X, Letter::Y, Letter::Z}) {
                            expect(is_single(f_gen(term, pos, anchor, j),
                                             w.with_letter(pos, j), c),
                                   "generate mismatch at " + w.str());
                            ++checked;
                        }
                    } else {
                        expect(is_single(f_rem(term, pos, anchor),
                                         w.with_letter(pos, Letter::I), c),
                               "remove mismatch at " + w.str());
                        ++checked;
                    }
                }
            }
        }
    }
    // 171 cycle + 234 generate + 234 remove identities across every word on
    // one, two, and three qubits
    expect(checked == 639,
           "identity sweep covered " + std::to_string(checked) + " of 639 cases");
}

void check_4_isolation_factor() {
    for (const Rational& c : {Rational(5, 3), Rational(-2, 9), Rational(7)}) {
        SkewOperator coupling =
            SkewOperator::single(PauliWord::from_string("ZZ"), c);
        SkewOperator got = isolate_coupling_term(coupling, 0, 1, Letter::Z, Letter::Z);
        expect(is_single(got, PauliWord::from_string("XX"), c * Rational(16)),
               "expected exactly 16*(" + rational_to_string(c) + ") on XX");
    }
}

void check_5_ten_qubit_composite() {
    DeviceLayout lay = read_layout(layout_path("double_t10.layout"));
    auto ca = std::make_shared<Certificate>(
        certify_direct(module_system(lay, 0, 1, false), {}, lay.modules[0].qubits));
    auto cb = std::make_shared<Certificate>(
        certify_direct(module_system(lay, 1, 1, false), {}, lay.modules[1].qubits));
    expect(ca->status == CertStatus::valid && cb->status == CertStatus::valid,
           "module certification failed");

    Certificate joined = compose(ca, cb, EntanglingCoupling::pure_xx(4, 7));
    expect(joined.status == CertStatus::valid, "composite certificate not valid");
    expect(joined.kind == Certificate::Kind::composite, "wrong node kind");
    // composition never touches the joint space
    expect(joined.closure.dimension == 0 && joined.closure.brackets_evaluated == 0,
           "a joint closure was run");
    expect(joined.total_qubits() == 10, "wrong qubit count");

    ResourceCount rc = resource_count(joined);
    expect(rc == ResourceCount{4, 8, 1},
           "resource counts {" + std::to_string(rc.local_controls) + ", " +
               std::to_string(rc.static_couplings) + ", " +
               std::to_string(rc.tunable_couplings) + "} instead of {4, 8, 1}");

    write_certificate(joined, "acc_cert5.json");
    Certificate back = read_certificate("acc_cert5.json");
    expect(back.canonical_text() == joined.canonical_text(),
           "certificate did not round-trip bit-exactly");
    write_certificate(back, "acc_cert5b.json");
    expect(slurp("acc_cert5.json") == slurp("acc_cert5b.json"),
           "serialized files differ");
    std::remove("acc_cert5.json");
    std::remove("acc_cert5b.json");
}

void check_6_large_design() {
    DeviceLayout lay = read_layout(layout_path("eagle127.layout"));
    ResourceCount rc = resource_count(lay);
    expect(rc == ResourceCount{52, 101, 25},
           "resource counts {" + std::to_string(rc.local_controls) + ", " +
               std::to_string(rc.static_couplings) + ", " +
               std::to_string(rc.tunable_couplings) + "} instead of {52, 101, 25}");

    // leaf closures: one per distinct module system, reused by content
    std::map<std::string, std::shared_ptr<const Certificate>> cache;
    std::vector<std::shared_ptr<const Certificate>> leaves(lay.modules.size());
    uint64_t closures = 0;
    for (size_t mi = 0; mi < lay.modules.size(); ++mi) {
        ControlSystem local = module_system(lay, mi, 1, /*representative=*/true);
        std::string key = local.canonical_text();
        auto it = cache.find(key);
        if (it == cache.end()) {
            ++closures;
            auto cert = std::make_shared<Certificate>(
                certify_direct(local, {}, lay.modules[mi].qubits));
            cache.emplace(std::move(key), cert);
            leaves[mi] = std::move(cert);
        } else {
            auto copy = std::make_shared<Certificate>(*it->second);
            copy->qubit_map = lay.modules[mi].qubits;
            leaves[mi] = std::move(copy);
        }
    }
    expect(closures == 3, std::to_string(closures) + " leaf closures instead of 3");

    // everything after the closures must take well under a second
    double t0 = now();
    std::shared_ptr<const Certificate> root = leaves[0];
    for (const LinkSpec& l : lay.links) {
        if (l.redundant) {
            continue;
        }
        size_t bi = lay.module_index(l.module_b);
        Certificate joined =
            compose(root, leaves[bi], EntanglingCoupling{l.qubit_a, l.qubit_b, l.c});
        root = std::make_shared<Certificate>(std::move(joined));
    }
    expect(root->status == CertStatus::valid, "composite certificate not valid");
    expect(root->total_qubits() == 127, "wrong qubit count");
    expect(root->leaf_count() == 26 && root->link_count() == 25, "wrong tree shape");
    std::string text = root->canonical_text();
    expect(Certificate::from_json(root->to_json()).canonical_text() == text,
           "certificate did not round-trip");
    double cert_seconds = now() - t0;
    expect(cert_seconds < 1.0,
           "certificate work took " + std::to_string(cert_seconds) + "s");

    // the joint space stays untouched: direct closure is refused by the guard
    auto [basis, rep] = lie_closure(layout_to_system(lay, 1));
    expect(rep.truncated && rep.truncation_reason == "qubit-guard",
           "the large register was not guarded");
    expect(rep.dimension == 0 && basis.size() == 0, "the guard still built a basis");
}

void check_7_oracle_equivalence() {
    uint64_t systems = 0;
    for (const BundledSystem& b : bundled_small_systems()) {
        if (b.system.num_qubits() > 3) {
            continue;
        }
        auto [basis, rep] = lie_closure(b.system);
        uint64_t dense = dense_closure_oracle(b.system);
        expect(rep.dimension == dense,
               b.name + ": sparse " + std::to_string(rep.dimension) + " vs dense " +
                   std::to_string(dense));
        ++systems;
    }
    expect(systems >= 10, "corpus holds only " + std::to_string(systems) + " systems");
}

void check_8_derivation_audits() {
    // two-plus-two composite: every cross word must replay exactly
    Partition small = Partition::of(4, {0, 1});
    SkewOperator seed22 = SkewOperator::single(
        PauliWord::single(4, 1, Letter::X).with_letter(2, Letter::X), Rational(1));
    AuditReport exhaustive = exhaustive_basis_audit(seed22, small);
    expect(exhaustive.samples == 225, "expected 225 cross words, saw " +
                                          std::to_string(exhaustive.samples));
    expect(exhaustive.failures == 0 && exhaustive.all_passed(),
           std::to_string(exhaustive.failures) + " replay failures");

    // ten-qubit composite: 200 random targets
    Partition big = Partition::of(10, {0, 1, 2, 3, 4});
    SkewOperator seed10 = SkewOperator::single(
        PauliWord::single(10, 4, Letter::X).with_letter(7, Letter::X), Rational(1));
    AuditReport sampled = sample_basis_audit(seed10, big, 200, 2026);
    expect(sampled.samples == 200, "short sample run");
    expect(sampled.failures == 0 && sampled.all_passed(),
           std::to_string(sampled.failures) + " of 200 samples failed");
}

void check_9_cli_determinism() {
    std::string cmd = "check " + layout_path("double_t10.layout") +
                      " --seed 5 --format machine --cert-out acc_cert9.json";
    RunResult r1 = run_cli(cmd);
    std::string cert1 = slurp("acc_cert9.json");
    RunResult r2 = run_cli(cmd);
    std::string cert2 = slurp("acc_cert9.json");
    std::remove("acc_cert9.json");
    expect(r1.exit_code == 0 && r2.exit_code == 0, "check run failed");
    expect(r1.output == r2.output, "machine reports differ between runs");
    expect(!cert1.empty() && cert1 == cert2, "certificates differ between runs");
}

}  // namespace

int main() {
    struct Gate {
        const char* label;
        std::function<void()> check;
    };
    std::vector<Gate> gates = {
        {"1 five-qubit T block reaches full dimension for three seeds",
         check_1_template_full_dimension},
        {"2 composed module pairs stay controllable across the coupling sweep",
         check_2_composition_soundness},
        {"3 index-move gadgets equal their closed forms exhaustively",
         check_3_move_identities},
        {"4 coupling isolation returns exactly sixteen times the component",
         check_4_isolation_factor},
        {"5 ten-qubit composite certifies with {4, 8, 1} resources and round-trips",
         check_5_ten_qubit_composite},
        {"6 127-qubit design: {52, 101, 25} resources, three leaf closures, guarded",
         check_6_large_design},
        {"7 sparse closure matches the dense-matrix oracle on the corpus",
         check_7_oracle_equivalence},
        {"8 derivation audits replay exhaustively and at scale",
         check_8_derivation_audits},
        {"9 repeated invocations emit byte-identical reports and certificates",
         check_9_cli_determinism},
    };

    int failed = 0;
    for (const Gate& gate : gates) {
        std::string verdict = "pass";
        try {
            gate.check();
        } catch (const CheckFailed& f) {
            verdict = "FAIL: " + f.why;
            ++failed;
        } catch (const std::exception& e) {
            verdict = std::string("FAIL: unexpected error: ") + e.what();
            ++failed;
        }
        std::printf("criterion %s: %s\n", gate.label, verdict.c_str());
    }
    if (failed != 0) {
        std::printf("acceptance: %d of %zu criteria failed\n", failed, gates.size());
        return 1;
    }
    std::printf("acceptance: all %zu criteria passed\n", gates.size());
    return 0;
}
