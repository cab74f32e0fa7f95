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

#include "qontrol/moves.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "qontrol/rational.hpp"

namespace qontrol {

Partition Partition::of(uint32_t num_qubits, std::vector<uint32_t> side_a) {
    std::sort(side_a.begin(), side_a.end());
    for (size_t i = 0; i < side_a.size(); ++i) {
        if (side_a[i] >= num_qubits || (i > 0 && side_a[i] == side_a[i - 1])) {
            throw Error("partition side A must be distinct in-range qubits");
        }
    }
    if (side_a.empty() || side_a.size() == num_qubits) {
        throw Error("a partition needs at least one qubit on each side");
    }
    return Partition{num_qubits, std::move(side_a)};
}

bool Partition::in_a(uint32_t qubit) const {
    return std::binary_search(side_a.begin(), side_a.end(), qubit);
}

std::vector<uint32_t> Partition::side_b() const {
    std::vector<uint32_t> out;
    out.reserve(num_qubits - side_a.size());
    for (uint32_t q = 0; q < num_qubits; ++q) {
        if (!in_a(q)) {
            out.push_back(q);
        }
    }
    return out;
}

namespace {

const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::cyc:
            return "cyc";
        case MoveKind::gen:
            return "gen";
        default:
            return "rem";
    }
}

// The single-term precondition shared by all moves.
std::pair<PauliWord, Rational> the_term(const SkewOperator& op, const char* what) {
    if (op.term_count() != 1) {
        throw Error(std::string(what) + " requires a single-term operator, got " +
                    std::to_string(op.term_count()) + " terms");
    }
    return op.terms().front();
}

SkewOperator single_letter(uint32_t n, uint32_t pos, Letter l) {
    return SkewOperator::single(PauliWord::single(n, pos, l), Rational(1));
}

}  // namespace

std::string IndexMove::str() const {
    std::ostringstream out;
    out << "MOVE " << move_kind_name(kind) << " " << (side == Side::A ? "A" : "B") << " " << pos;
    if (kind == MoveKind::cyc) {
        out << " " << letter_char(j);
    } else {
        out << " " << anchor << " " << letter_char(j) << " " << letter_char(k);
    }
    return out.str();
}

IndexMove IndexMove::parse(const std::string& line) {
    std::istringstream in(line);
    std::string tag, kind, side;
    if (!(in >> tag >> kind >> side) || tag != "MOVE") {
        throw Error("malformed move line: " + line);
    }
    IndexMove m;
    if (kind == "cyc") {
        m.kind = MoveKind::cyc;
    } else if (kind == "gen") {
        m.kind = MoveKind::gen;
    } else if (kind == "rem") {
        m.kind = MoveKind::rem;
    } else {
        throw Error("unknown move kind: " + kind);
    }
    if (side == "A") {
        m.side = Side::A;
    } else if (side == "B") {
        m.side = Side::B;
    } else {
        throw Error("unknown partition side: " + side);
    }
    char jc = 0, kc = 0;
    if (m.kind == MoveKind::cyc) {
        if (!(in >> m.pos >> jc)) {
            throw Error("malformed move line: " + line);
        }
        m.j = letter_from_char(jc);
    } else {
        if (!(in >> m.pos >> m.anchor >> jc >> kc)) {
            throw Error("malformed move line: " + line);
        }
        m.j = letter_from_char(jc);
        m.k = letter_from_char(kc);
    }
    std::string extra;
    if (in >> extra) {
        throw Error("trailing tokens in move line: " + line);
    }
    return m;
}

SkewOperator f_cyc(const SkewOperator& term, uint32_t pos) {
    auto [word, coeff] = the_term(term, "f_cyc");
    Letter j = word.letter(pos);
    if (j == Letter::I) {
        throw Error("f_cyc needs a non-identity letter at its position");
    }
    SkewOperator gadget = single_letter(term.num_qubits(), pos, letter_cycled(j, 2));
    return scale_add<Rational>({{Rational(-1, 2), commutator(gadget, term)}});
}

namespace {

// Shared core of f_gen and f_rem: the two-bracket gadget anchored at an
// occupied position. For gen, `pos` is empty and `j` is the letter to
// install; for rem, `pos` holds `j` and the gadget clears it.
SkewOperator gen_rem_gadget(const SkewOperator& term, uint32_t pos, uint32_t anchor, Letter j) {
    auto [word, coeff] = the_term(term, "f_gen/f_rem");
    Letter k = word.letter(anchor);
    if (pos == anchor) {
        throw Error("move position and anchor must differ");
    }
    if (k == Letter::I) {
        throw Error("the anchor position must hold a non-identity letter");
    }
    uint32_t n = term.num_qubits();
    Letter k1 = letter_cycled(k, 1);
    PauliWord pair_word =
        PauliWord::single(n, pos, j).with_letter(anchor, k1);
    SkewOperator pair_gadget = SkewOperator::single(pair_word, Rational(1));
    SkewOperator anchor_gadget = single_letter(n, anchor, k1);
    SkewOperator inner = commutator(pair_gadget, term);
    return scale_add<Rational>({{Rational(-1, 4), commutator(anchor_gadget, inner)}});
}

}  // namespace

SkewOperator f_gen(const SkewOperator& term, uint32_t pos, uint32_t anchor, Letter j) {
    auto [word, coeff] = the_term(term, "f_gen");
    if (j == Letter::I) {
        throw Error("f_gen cannot install the identity letter");
    }
    if (word.letter(pos) != Letter::I) {
        throw Error("f_gen target position is already occupied");
    }
    return gen_rem_gadget(term, pos, anchor, j);
}

SkewOperator f_rem(const SkewOperator& term, uint32_t pos, uint32_t anchor) {
    auto [word, coeff] = the_term(term, "f_rem");
    Letter j = word.letter(pos);
    if (j == Letter::I) {
        throw Error("f_rem needs a non-identity letter to remove");
    }
    return gen_rem_gadget(term, pos, anchor, j);
}

SkewOperator apply_move(const SkewOperator& term, const IndexMove& move) {
    auto [word, coeff] = the_term(term, "apply_move");
    switch (move.kind) {
        case MoveKind::cyc:
            if (word.letter(move.pos) != move.j) {
                throw Error("recorded cyc index does not match the operand at " +
                            std::to_string(move.pos));
            }
            return f_cyc(term, move.pos);
        case MoveKind::gen:
            if (word.letter(move.anchor) != move.k) {
                throw Error("recorded gen anchor index does not match the operand");
            }
            return f_gen(term, move.pos, move.anchor, move.j);
        default:
            if (word.letter(move.pos) != move.j || word.letter(move.anchor) != move.k) {
                throw Error("recorded rem indices do not match the operand");
            }
            return f_rem(term, move.pos, move.anchor);
    }
}

SkewOperator isolate_coupling_term(const SkewOperator& coupling, uint32_t qubit_a,
                                   uint32_t qubit_b, Letter alpha, Letter j) {
    if (alpha == Letter::I || j == Letter::I) {
        throw Error("isolation targets a non-identity component on each side");
    }
    if (coupling.is_zero()) {
        throw Error("cannot isolate from a zero coupling");
    }
    uint32_t n = coupling.num_qubits();
    for (const auto& [w, c] : coupling.terms()) {
        std::vector<uint32_t> sup = w.support();
        if (sup.size() != 2 || sup[0] != std::min(qubit_a, qubit_b) ||
            sup[1] != std::max(qubit_a, qubit_b)) {
            throw Error("coupling terms must act exactly on the two linked qubits");
        }
    }
    PauliWord want = PauliWord::single(n, qubit_a, alpha).with_letter(qubit_b, j);
    Rational c = coupling.coefficient(want);
    if (sgn(c) == 0) {
        std::ostringstream msg;
        msg << "coupling component (" << letter_char(alpha) << "," << letter_char(j)
            << ") is zero; nonzero components:";
        for (const auto& [w, cv] : coupling.terms()) {
            msg << " (" << letter_char(w.letter(qubit_a)) << "," << letter_char(w.letter(qubit_b))
                << ")";
        }
        throw Error(msg.str());
    }
    // Four nested bracket filters: each side keeps only its targeted row or
    // column of the coupling matrix and advances the surviving letter, with
    // a factor 4 per side.
    SkewOperator h = commutator(single_letter(n, qubit_a, letter_cycled(alpha, 1)), coupling);
    h = commutator(single_letter(n, qubit_a, alpha), h);
    h = commutator(single_letter(n, qubit_b, letter_cycled(j, 1)), h);
    h = commutator(single_letter(n, qubit_b, j), h);
    if (h.term_count() != 1) {
        throw Error("isolation did not reduce to a single term");
    }
    return h;
}

namespace {

struct SideState {
    Side side;
    std::map<uint32_t, Letter> letters;  // occupied positions within the side

    uint32_t lowest_occupied() const { return letters.begin()->first; }
};

void plan_side(const PauliWord& target, Side side, const std::vector<uint32_t>& side_positions,
               SideState& state, std::vector<IndexMove>& moves) {
    std::vector<uint32_t> target_support;
    for (uint32_t q : side_positions) {
        if (target.letter(q) != Letter::I) {
            target_support.push_back(q);
        }
    }
    if (target_support.empty()) {
        throw Error("the target must touch both partition sides");
    }
    uint32_t seed_pos = state.lowest_occupied();

    // Install target letters at every missing position, lowest anchors first.
    for (uint32_t q : target_support) {
        if (state.letters.count(q) != 0) {
            continue;
        }
        uint32_t anchor = state.lowest_occupied();
        Letter j = target.letter(q);
        moves.push_back(IndexMove{MoveKind::gen, side, q, anchor, j, state.letters[anchor]});
        state.letters[q] = j;
    }
    // Clear the seed position when the target does not use it.
    if (target.letter(seed_pos) == Letter::I) {
        Letter j = state.letters[seed_pos];
        state.letters.erase(seed_pos);
        uint32_t anchor = state.lowest_occupied();
        moves.push_back(IndexMove{MoveKind::rem, side, seed_pos, anchor, j,
                                  state.letters[anchor]});
    }
    // Cycle any leftover mismatch (only the seed position can mismatch).
    for (uint32_t q : target_support) {
        Letter cur = state.letters[q];
        Letter want = target.letter(q);
        unsigned steps = (3 + static_cast<unsigned>(want) - static_cast<unsigned>(cur)) % 3;
        for (unsigned s = 0; s < steps; ++s) {
            moves.push_back(IndexMove{MoveKind::cyc, side, q, 0, cur, Letter::I});
            cur = letter_cycled(cur, 1);
        }
        state.letters[q] = cur;
    }
}

}  // namespace

DerivationPath plan_derivation(const SkewOperator& seed, const PauliWord& target,
                               const Partition& part) {
    auto [word, coeff] = the_term(seed, "plan_derivation");
    uint32_t n = seed.num_qubits();
    if (target.num_qubits() != n || part.num_qubits != n) {
        throw SizeMismatchError("seed, target and partition qubit counts must agree");
    }
    std::vector<uint32_t> side_b = part.side_b();

    SideState state_a{Side::A, {}};
    SideState state_b{Side::B, {}};
    for (uint32_t q : word.support()) {
        (part.in_a(q) ? state_a : state_b).letters[q] = word.letter(q);
    }
    if (state_a.letters.size() != 1 || state_b.letters.size() != 1) {
        throw Error("the seed must hold exactly one non-identity letter per side");
    }

    DerivationPath path;
    path.seed = seed;
    path.target = target;
    plan_side(target, Side::A, part.side_a, state_a, path.moves);
    plan_side(target, Side::B, side_b, state_b, path.moves);
    return path;
}

SkewOperator DerivationPath::replay() const {
    SkewOperator op = seed;
    for (const IndexMove& m : moves) {
        op = apply_move(op, m);
    }
    return op;
}

std::string DerivationPath::trace() const {
    std::ostringstream out;
    const auto& [word, coeff] = seed.terms().front();
    out << "DERIVE seed=" << rational_to_string(coeff) << "*i*" << word.str()
        << " target=" << target.str() << "\n";
    for (const IndexMove& m : moves) {
        out << m.str() << "\n";
    }
    return out.str();
}

namespace {

bool audit_one(const SkewOperator& seed, const Partition& part, const PauliWord& target,
               std::string* note) {
    try {
        DerivationPath path = plan_derivation(seed, target, part);
        SkewOperator result = path.replay();
        if (result.term_count() != 1) {
            *note = target.str() + ": replay is not a single term";
            return false;
        }
        const auto& [word, coeff] = result.terms().front();
        if (word != target) {
            *note = target.str() + ": replay landed on " + word.str();
            return false;
        }
        if (coeff != seed.terms().front().second) {
            *note = target.str() + ": coefficient drifted to " + rational_to_string(coeff);
            return false;
        }
        return true;
    } catch (const Error& e) {
        *note = target.str() + ": " + e.what();
        return false;
    }
}

void record(AuditReport& report, bool ok, std::string note) {
    ++report.samples;
    if (ok) {
        ++report.passes;
    } else {
        ++report.failures;
        if (report.failure_notes.size() < 16) {
            report.failure_notes.push_back(std::move(note));
        }
    }
}

}  // namespace

AuditReport sample_basis_audit(const SkewOperator& seed, const Partition& part, uint64_t samples,
                               uint64_t rng_seed) {
    the_term(seed, "sample_basis_audit");
    uint32_t n = seed.num_qubits();
    std::mt19937_64 rng(rng_seed);
    AuditReport report;
    for (uint64_t s = 0; s < samples; ++s) {
        PauliWord target = PauliWord::identity(n);
        while (true) {
            std::vector<Letter> letters(n);
            for (uint32_t q = 0; q < n; ++q) {
                letters[q] = static_cast<Letter>(rng() % 4);
            }
            target = PauliWord::from_letters(letters);
            bool touch_a = false, touch_b = false;
            for (uint32_t q : target.support()) {
                (part.in_a(q) ? touch_a : touch_b) = true;
            }
            if (touch_a && touch_b) {
                break;
            }
        }
        std::string note;
        bool ok = audit_one(seed, part, target, &note);
        record(report, ok, std::move(note));
    }
    return report;
}

AuditReport exhaustive_basis_audit(const SkewOperator& seed, const Partition& part) {
    the_term(seed, "exhaustive_basis_audit");
    uint32_t n = seed.num_qubits();
    if (n > 10) {
        throw Error("exhaustive audit is limited to 10 qubits");
    }
    AuditReport report;
    uint64_t total = 1ULL << (2 * n);
    for (uint64_t code = 1; code < total; ++code) {
        std::vector<Letter> letters(n);
        for (uint32_t q = 0; q < n; ++q) {
            letters[q] = static_cast<Letter>((code >> (2 * (n - 1 - q))) & 3);
        }
        PauliWord target = PauliWord::from_letters(letters);
        bool touch_a = false, touch_b = false;
        for (uint32_t q : target.support()) {
            (part.in_a(q) ? touch_a : touch_b) = true;
        }
        if (!touch_a || !touch_b) {
            continue;
        }
        std::string note;
        bool ok = audit_one(seed, part, target, &note);
        record(report, ok, std::move(note));
    }
    return report;
}

}  // namespace qontrol
