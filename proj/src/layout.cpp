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

#include "qontrol/layout.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "qontrol/util.hpp"

namespace qontrol {

const char* template_name(TemplateKind k) {
    switch (k) {
        case TemplateKind::T5:
            return "T5";
        case TemplateKind::L5:
            return "L5";
        case TemplateKind::L4:
            return "L4";
        default:
            return "custom";
    }
}

TemplateKind template_from_name(std::string_view name) {
    if (name == "T5") {
        return TemplateKind::T5;
    }
    if (name == "L5") {
        return TemplateKind::L5;
    }
    if (name == "L4") {
        return TemplateKind::L4;
    }
    throw Error("unknown template: " + std::string(name));
}

uint32_t template_size(TemplateKind k) {
    switch (k) {
        case TemplateKind::T5:
        case TemplateKind::L5:
            return 5;
        case TemplateKind::L4:
            return 4;
        default:
            throw Error("custom modules have no fixed size");
    }
}

namespace {

struct TemplateDef {
    uint32_t size;
    std::vector<std::pair<uint32_t, uint32_t>> bonds;
    std::vector<uint32_t> controls;
};

const TemplateDef& template_def(TemplateKind k) {
    static const TemplateDef t5{5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}}, {1, 3}};
    static const TemplateDef l5{5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {1, 2}};
    static const TemplateDef l4{4, {{0, 1}, {1, 2}, {2, 3}}, {1, 2}};
    switch (k) {
        case TemplateKind::T5:
            return t5;
        case TemplateKind::L5:
            return l5;
        case TemplateKind::L4:
            return l4;
        default:
            throw Error("custom modules have no template definition");
    }
}

// Shared drift family on local indices: -(omega_q/2) Z_q per qubit and
// J_ab (X_a X_b + Y_a Y_b) per bond; controls are single-qubit Paulis.
ParameterizedSystem build_module_parameterized(
    uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>>& bonds,
    const std::vector<std::pair<uint32_t, Letter>>& controls) {
    ParameterizedSystem sys;
    sys.num_qubits = n;
    for (uint32_t q = 0; q < n; ++q) {
        sys.drift_parts.emplace_back(
            "omega" + std::to_string(q),
            SkewOperator::from_terms(
                n, {{PauliWord::single(n, q, Letter::Z), Rational(-1, 2)}}));
    }
    for (const auto& [a, b] : bonds) {
        SkewOperator part = SkewOperator::from_terms(
            n, {{PauliWord::single(n, a, Letter::X).with_letter(b, Letter::X), Rational(1)},
                {PauliWord::single(n, a, Letter::Y).with_letter(b, Letter::Y), Rational(1)}});
        sys.drift_parts.emplace_back("J" + std::to_string(a) + std::to_string(b),
                                     std::move(part));
    }
    for (const auto& [q, axis] : controls) {
        sys.controls.push_back(
            SkewOperator::from_terms(n, {{PauliWord::single(n, q, axis), Rational(1)}}));
        sys.control_labels.push_back(
            std::string(1, static_cast<char>(std::tolower(letter_char(axis)))) +
            std::to_string(q));
    }
    return sys;
}

}  // namespace

ParameterizedSystem build_template(TemplateKind k) {
    const TemplateDef& def = template_def(k);
    std::vector<std::pair<uint32_t, Letter>> controls;
    for (uint32_t q : def.controls) {
        controls.emplace_back(q, Letter::X);
    }
    return build_module_parameterized(def.size, def.bonds, controls);
}

LayoutParseError::LayoutParseError(size_t line_no, const std::string& message)
    : Error("layout line " + std::to_string(line_no) + ": " + message), line(line_no) {}

std::vector<std::pair<uint32_t, uint32_t>> ModuleSpec::bonds() const {
    if (kind == TemplateKind::Custom) {
        return custom_bonds;
    }
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (const auto& [a, b] : template_def(kind).bonds) {
        out.emplace_back(qubits[a], qubits[b]);
    }
    return out;
}

std::vector<std::pair<uint32_t, Letter>> ModuleSpec::controls() const {
    if (kind == TemplateKind::Custom) {
        return custom_controls;
    }
    std::vector<std::pair<uint32_t, Letter>> out;
    for (uint32_t q : template_def(kind).controls) {
        out.emplace_back(qubits[q], Letter::X);
    }
    return out;
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

namespace {

bool plain_token(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '#' || c == ':') {
            return false;
        }
    }
    return true;
}

}  // namespace

void DeviceLayout::validate() const {
    if (!plain_token(name)) {
        throw Error("device name must be a single plain token");
    }
    if (qubit_count == 0) {
        throw Error("device must have at least one qubit");
    }
    std::set<std::string> ids;
    std::vector<int> owner(qubit_count, -1);
    for (size_t mi = 0; mi < modules.size(); ++mi) {
        const ModuleSpec& m = modules[mi];
        if (!plain_token(m.id)) {
            throw Error("module id must be a single plain token");
        }
        if (!ids.insert(m.id).second) {
            throw Error("duplicate module id: " + m.id);
        }
        if (m.kind != TemplateKind::Custom && m.qubits.size() != template_size(m.kind)) {
            throw Error("module " + m.id + " has " + std::to_string(m.qubits.size()) +
                        " qubits; template " + template_name(m.kind) + " needs " +
                        std::to_string(template_size(m.kind)));
        }
        if (m.qubits.empty()) {
            throw Error("module " + m.id + " has no qubits");
        }
        for (uint32_t q : m.qubits) {
            if (q >= qubit_count) {
                throw Error("module " + m.id + " uses qubit " + std::to_string(q) +
                            " outside the device");
            }
            if (owner[q] >= 0) {
                throw Error("overlapping qubit sets: qubit " + std::to_string(q) +
                            " claimed twice");
            }
            owner[q] = static_cast<int>(mi);
        }
        auto member = [&m](uint32_t q) {
            return std::find(m.qubits.begin(), m.qubits.end(), q) != m.qubits.end();
        };
        for (const auto& [a, b] : m.custom_bonds) {
            if (a == b || !member(a) || !member(b)) {
                throw Error("module " + m.id + " static coupling (" + std::to_string(a) +
                            "," + std::to_string(b) + ") must join two of its own qubits");
            }
        }
        for (const auto& [q, axis] : m.custom_controls) {
            if (!member(q)) {
                throw Error("module " + m.id + " control on qubit " + std::to_string(q) +
                            " outside the module");
            }
            if (axis == Letter::I) {
                throw Error("module " + m.id + " control axis must be X, Y or Z");
            }
        }
    }
    for (uint32_t q = 0; q < qubit_count; ++q) {
        if (owner[q] < 0) {
            throw Error("qubit " + std::to_string(q) + " belongs to no module");
        }
    }
    for (const LinkSpec& l : links) {
        const ModuleSpec& ma = modules[module_index(l.module_a)];
        const ModuleSpec& mb = modules[module_index(l.module_b)];
        if (l.module_a == l.module_b) {
            throw Error("intra-module link on " + l.module_a);
        }
        auto inside = [](const ModuleSpec& m, uint32_t q) {
            return std::find(m.qubits.begin(), m.qubits.end(), q) != m.qubits.end();
        };
        if (!inside(ma, l.qubit_a) || !inside(mb, l.qubit_b)) {
            throw Error("dangling link qubit on " + l.module_a + ":" +
                        std::to_string(l.qubit_a) + " " + l.module_b + ":" +
                        std::to_string(l.qubit_b));
        }
        bool nonzero = false;
        for (const Rational& v : l.c) {
            nonzero = nonzero || sgn(v) != 0;
        }
        if (!nonzero) {
            throw Error("zero coupling matrix on link " + l.module_a + ":" +
                        std::to_string(l.qubit_a) + " " + l.module_b + ":" +
                        std::to_string(l.qubit_b));
        }
    }
}

size_t DeviceLayout::module_index(std::string_view id) const {
    for (size_t i = 0; i < modules.size(); ++i) {
        if (modules[i].id == id) {
            return i;
        }
    }
    throw Error("unknown module id: " + std::string(id));
}

size_t DeviceLayout::active_link_count() const {
    return static_cast<size_t>(
        std::count_if(links.begin(), links.end(),
                      [](const LinkSpec& l) { return !l.redundant; }));
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        tokens.push_back(tok);
    }
    return tokens;
}

// Splits on commas outside parentheses so "(a,b):XXYY" stays one entry.
std::vector<std::string> split_list(const std::string& text, size_t line) {
    std::vector<std::string> out;
    if (text.empty()) {
        return out;
    }
    std::string piece;
    int depth = 0;
    auto flush = [&] {
        if (piece.empty()) {
            throw LayoutParseError(line, "empty list entry");
        }
        out.push_back(std::move(piece));
        piece.clear();
    };
    for (char ch : text) {
        if (ch == '(') {
            ++depth;
        } else if (ch == ')') {
            --depth;
        }
        if (ch == ',' && depth == 0) {
            flush();
        } else {
            piece.push_back(ch);
        }
    }
    flush();
    return out;
}

uint32_t parse_u32(const std::string& tok, size_t line, const char* what) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
        throw LayoutParseError(line, std::string("bad ") + what + ": " + tok);
    }
    unsigned long v = 0;
    try {
        v = std::stoul(tok);
    } catch (const std::exception&) {
        throw LayoutParseError(line, std::string("bad ") + what + ": " + tok);
    }
    if (v > 0xffffffffUL) {
        throw LayoutParseError(line, std::string("bad ") + what + ": " + tok);
    }
    return static_cast<uint32_t>(v);
}

// "(a,b):XXYY" -> bond pair
std::pair<uint32_t, uint32_t> parse_static_entry(const std::string& tok, size_t line) {
    size_t close = tok.find(')');
    if (tok.empty() || tok.front() != '(' || close == std::string::npos ||
        tok.substr(close + 1, 1) != ":") {
        throw LayoutParseError(line, "bad static coupling: " + tok);
    }
    std::string kind = tok.substr(close + 2);
    if (kind != "XXYY") {
        throw LayoutParseError(line, "unsupported coupling kind: " + kind);
    }
    std::string inner = tok.substr(1, close - 1);
    size_t comma = inner.find(',');
    if (comma == std::string::npos) {
        throw LayoutParseError(line, "bad static coupling: " + tok);
    }
    uint32_t a = parse_u32(inner.substr(0, comma), line, "qubit");
    uint32_t b = parse_u32(inner.substr(comma + 1), line, "qubit");
    return {a, b};
}

// "q:X" -> control pair
std::pair<uint32_t, Letter> parse_control_entry(const std::string& tok, size_t line) {
    size_t colon = tok.find(':');
    if (colon == std::string::npos || colon + 2 != tok.size()) {
        throw LayoutParseError(line, "bad control entry: " + tok);
    }
    uint32_t q = parse_u32(tok.substr(0, colon), line, "qubit");
    Letter axis;
    try {
        axis = letter_from_char(tok[colon + 1]);
    } catch (const Error&) {
        throw LayoutParseError(line, "bad control axis in: " + tok);
    }
    if (axis == Letter::I) {
        throw LayoutParseError(line, "control axis must be X, Y or Z");
    }
    return {q, axis};
}

// "id:q" -> endpoint
std::pair<std::string, uint32_t> parse_endpoint(const std::string& tok, size_t line) {
    size_t colon = tok.rfind(':');
    if (colon == std::string::npos || colon == 0) {
        throw LayoutParseError(line, "bad link endpoint: " + tok);
    }
    return {tok.substr(0, colon), parse_u32(tok.substr(colon + 1), line, "qubit")};
}

}  // namespace

DeviceLayout parse_layout(std::string_view text) {
    DeviceLayout layout;
    bool have_device = false;
    std::set<std::string> ids;
    std::map<uint32_t, std::string> claimed;  // qubit -> module id

    std::istringstream stream{std::string(text)};
    std::string raw;
    size_t line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.resize(hash);
        }
        std::vector<std::string> tok = split_ws(raw);
        if (tok.empty()) {
            continue;
        }

        if (tok[0] == "device") {
            if (have_device) {
                throw LayoutParseError(line_no, "duplicate device line");
            }
            if (tok.size() != 4 || tok[2] != "qubits") {
                throw LayoutParseError(line_no, "expected: device <name> qubits <N>");
            }
            layout.name = tok[1];
            layout.qubit_count = parse_u32(tok[3], line_no, "qubit count");
            if (layout.qubit_count == 0) {
                throw LayoutParseError(line_no, "device must have at least one qubit");
            }
            have_device = true;
            continue;
        }
        if (!have_device) {
            throw LayoutParseError(line_no, "the device line must come first");
        }

        if (tok[0] == "module") {
            if (tok.size() < 3) {
                throw LayoutParseError(line_no, "incomplete module line");
            }
            ModuleSpec m;
            m.id = tok[1];
            if (!ids.insert(m.id).second) {
                throw LayoutParseError(line_no, "duplicate module id: " + m.id);
            }
            size_t next = 3;
            if (tok[2] == "template") {
                if (tok.size() != 6 || tok[4] != "at") {
                    throw LayoutParseError(
                        line_no, "expected: module <id> template <kind> at <q0,q1,...>");
                }
                try {
                    m.kind = template_from_name(tok[3]);
                } catch (const Error& e) {
                    throw LayoutParseError(line_no, e.what());
                }
                for (const std::string& q : split_list(tok[5], line_no)) {
                    m.qubits.push_back(parse_u32(q, line_no, "qubit"));
                }
                if (m.qubits.size() != template_size(m.kind)) {
                    throw LayoutParseError(line_no,
                                           "template " + std::string(template_name(m.kind)) +
                                               " needs " +
                                               std::to_string(template_size(m.kind)) +
                                               " qubits");
                }
                next = 6;
            } else if (tok[2] == "custom") {
                if (tok.size() < 5 || tok[3] != "at") {
                    throw LayoutParseError(line_no,
                                           "expected: module <id> custom at <q,...> ...");
                }
                m.kind = TemplateKind::Custom;
                for (const std::string& q : split_list(tok[4], line_no)) {
                    m.qubits.push_back(parse_u32(q, line_no, "qubit"));
                }
                next = 5;
                bool saw_controls = false, saw_static = false;
                while (next < tok.size()) {
                    if (next + 1 >= tok.size()) {
                        throw LayoutParseError(line_no, "dangling key: " + tok[next]);
                    }
                    if (tok[next] == "controls" && !saw_controls) {
                        for (const std::string& e : split_list(tok[next + 1], line_no)) {
                            m.custom_controls.push_back(parse_control_entry(e, line_no));
                        }
                        saw_controls = true;
                    } else if (tok[next] == "static" && !saw_static) {
                        for (const std::string& e : split_list(tok[next + 1], line_no)) {
                            m.custom_bonds.push_back(parse_static_entry(e, line_no));
                        }
                        saw_static = true;
                    } else {
                        throw LayoutParseError(line_no, "unexpected token: " + tok[next]);
                    }
                    next += 2;
                }
                next = tok.size();
            } else {
                throw LayoutParseError(line_no, "expected 'template' or 'custom'");
            }
            if (next != tok.size()) {
                throw LayoutParseError(line_no, "trailing tokens on module line");
            }

            std::set<uint32_t> in_module;
            for (uint32_t q : m.qubits) {
                if (q >= layout.qubit_count) {
                    throw LayoutParseError(line_no, "qubit " + std::to_string(q) +
                                                        " outside the device");
                }
                if (!in_module.insert(q).second) {
                    throw LayoutParseError(line_no, "overlapping qubit sets: qubit " +
                                                        std::to_string(q) +
                                                        " listed twice in " + m.id);
                }
                auto [it, fresh] = claimed.emplace(q, m.id);
                if (!fresh) {
                    throw LayoutParseError(line_no, "overlapping qubit sets: qubit " +
                                                        std::to_string(q) + " already in " +
                                                        it->second);
                }
            }
            for (const auto& [q, axis] : m.custom_controls) {
                (void)axis;
                if (!in_module.count(q)) {
                    throw LayoutParseError(line_no, "control qubit " + std::to_string(q) +
                                                        " outside module " + m.id);
                }
            }
            for (const auto& [a, b] : m.custom_bonds) {
                if (a == b || !in_module.count(a) || !in_module.count(b)) {
                    throw LayoutParseError(line_no, "static coupling (" + std::to_string(a) +
                                                        "," + std::to_string(b) +
                                                        ") must join two qubits of " + m.id);
                }
            }
            layout.modules.push_back(std::move(m));
            continue;
        }

        if (tok[0] == "link" || tok[0] == "redundant") {
            if (tok.size() != 3 && tok.size() != 13) {
                throw LayoutParseError(
                    line_no, "expected: " + tok[0] + " <idA>:<qa> <idB>:<qb> [c <9 reals>]");
            }
            LinkSpec l;
            l.redundant = tok[0] == "redundant";
            auto [ida, qa] = parse_endpoint(tok[1], line_no);
            auto [idb, qb] = parse_endpoint(tok[2], line_no);
            l.module_a = ida;
            l.module_b = idb;
            l.qubit_a = qa;
            l.qubit_b = qb;
            if (tok.size() == 13) {
                if (tok[3] != "c") {
                    throw LayoutParseError(line_no, "expected 'c' before coupling values");
                }
                for (size_t k = 0; k < 9; ++k) {
                    try {
                        l.c[k] = parse_rational(tok[4 + k]);
                    } catch (const Error& e) {
                        throw LayoutParseError(line_no, e.what());
                    }
                }
            } else {
                l.c[0] = 1;  // pure XX default
            }

            // Line-local checks with the context collected so far.
            auto module_of = [&](const std::string& id) -> const ModuleSpec& {
                for (const ModuleSpec& m : layout.modules) {
                    if (m.id == id) {
                        return m;
                    }
                }
                throw LayoutParseError(line_no, "unknown module id: " + id);
            };
            const ModuleSpec& ma = module_of(l.module_a);
            const ModuleSpec& mb = module_of(l.module_b);
            if (l.module_a == l.module_b) {
                throw LayoutParseError(line_no, "intra-module link on " + l.module_a);
            }
            auto inside = [](const ModuleSpec& m, uint32_t q) {
                return std::find(m.qubits.begin(), m.qubits.end(), q) != m.qubits.end();
            };
            if (!inside(ma, l.qubit_a)) {
                throw LayoutParseError(line_no, "dangling link qubit " +
                                                    std::to_string(l.qubit_a) + " not in " +
                                                    l.module_a);
            }
            if (!inside(mb, l.qubit_b)) {
                throw LayoutParseError(line_no, "dangling link qubit " +
                                                    std::to_string(l.qubit_b) + " not in " +
                                                    l.module_b);
            }
            bool nonzero = false;
            for (const Rational& v : l.c) {
                nonzero = nonzero || sgn(v) != 0;
            }
            if (!nonzero) {
                throw LayoutParseError(line_no, "zero coupling matrix");
            }
            layout.links.push_back(std::move(l));
            continue;
        }

        throw LayoutParseError(line_no, "unknown directive: " + tok[0]);
    }

    if (!have_device) {
        throw LayoutParseError(0, "missing device line");
    }
    try {
        layout.validate();
    } catch (const LayoutParseError&) {
        throw;
    } catch (const Error& e) {
        throw LayoutParseError(0, e.what());
    }
    return layout;
}

DeviceLayout read_layout(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read layout file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_layout(buffer.str());
}

std::string emit_layout(const DeviceLayout& layout) {
    std::ostringstream out;
    out << "device " << layout.name << " qubits " << layout.qubit_count << "\n";
    for (const ModuleSpec& m : layout.modules) {
        if (m.kind != TemplateKind::Custom) {
            out << "module " << m.id << " template " << template_name(m.kind) << " at ";
            for (size_t i = 0; i < m.qubits.size(); ++i) {
                out << (i ? "," : "") << m.qubits[i];
            }
            out << "\n";
            continue;
        }
        out << "module " << m.id << " custom at ";
        for (size_t i = 0; i < m.qubits.size(); ++i) {
            out << (i ? "," : "") << m.qubits[i];
        }
        if (!m.custom_controls.empty()) {
            out << " controls ";
            for (size_t i = 0; i < m.custom_controls.size(); ++i) {
                out << (i ? "," : "") << m.custom_controls[i].first << ":"
                    << letter_char(m.custom_controls[i].second);
            }
        }
        if (!m.custom_bonds.empty()) {
            out << " static ";
            for (size_t i = 0; i < m.custom_bonds.size(); ++i) {
                out << (i ? "," : "") << "(" << m.custom_bonds[i].first << ","
                    << m.custom_bonds[i].second << "):XXYY";
            }
        }
        out << "\n";
    }
    for (const LinkSpec& l : layout.links) {
        out << (l.redundant ? "redundant " : "link ") << l.module_a << ":" << l.qubit_a
            << " " << l.module_b << ":" << l.qubit_b;
        bool pure_xx = l.c[0] == 1;
        for (size_t k = 1; k < 9; ++k) {
            pure_xx = pure_xx && sgn(l.c[k]) == 0;
        }
        if (!pure_xx) {
            out << " c";
            for (const Rational& v : l.c) {
                out << " " << rational_to_string(v);
            }
        }
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// composite generation
// ---------------------------------------------------------------------------

std::vector<std::pair<uint32_t, uint32_t>> CompositePlan::chain(uint32_t module_count) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (uint32_t i = 0; i + 1 < module_count; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return edges;
}

DeviceLayout generate_composite(const CompositePlan& plan) {
    if (plan.modules.empty()) {
        throw Error("a composite plan needs at least one module");
    }
    uint32_t count = static_cast<uint32_t>(plan.modules.size());
    if (plan.edges.size() + 1 != plan.modules.size()) {
        throw Error("the link set must be a spanning tree (module count minus one edges)");
    }
    // Union-find connectivity check.
    std::vector<uint32_t> parent(count);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&parent](uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (const auto& [a, b] : plan.edges) {
        if (a >= count || b >= count || a == b) {
            throw Error("bad composite edge");
        }
        uint32_t ra = find(a), rb = find(b);
        if (ra == rb) {
            throw Error("the link set must be a spanning tree (cycle found)");
        }
        parent[ra] = rb;
    }

    DeviceLayout layout;
    layout.name = plan.name;
    std::vector<uint32_t> start(count);
    uint32_t next = 0;
    for (uint32_t i = 0; i < count; ++i) {
        uint32_t size = template_size(plan.modules[i]);
        start[i] = next;
        ModuleSpec m;
        m.id = "m" + std::to_string(i);
        m.kind = plan.modules[i];
        for (uint32_t q = 0; q < size; ++q) {
            m.qubits.push_back(next + q);
        }
        next += size;
        layout.modules.push_back(std::move(m));
    }
    layout.qubit_count = next;
    for (const auto& [a, b] : plan.edges) {
        uint32_t lo = std::min(a, b), hi = std::max(a, b);
        LinkSpec l;
        l.module_a = "m" + std::to_string(lo);
        l.module_b = "m" + std::to_string(hi);
        l.qubit_a = start[lo] + template_size(plan.modules[lo]) - 1;
        l.qubit_b = start[hi];
        l.c[0] = 1;
        layout.links.push_back(std::move(l));
    }
    layout.validate();
    return layout;
}

// ---------------------------------------------------------------------------
// concrete systems
// ---------------------------------------------------------------------------

ControlSystem module_system(const DeviceLayout& layout, size_t module_index, uint64_t seed,
                            bool representative) {
    if (module_index >= layout.modules.size()) {
        throw Error("module index out of range");
    }
    const ModuleSpec& m = layout.modules[module_index];

    ParameterizedSystem psys;
    if (m.kind != TemplateKind::Custom) {
        psys = build_template(m.kind);
    } else {
        auto local_of = [&m](uint32_t global_q) {
            auto it = std::find(m.qubits.begin(), m.qubits.end(), global_q);
            if (it == m.qubits.end()) {
                throw Error("module " + m.id + " does not contain qubit " +
                            std::to_string(global_q));
            }
            return static_cast<uint32_t>(it - m.qubits.begin());
        };
        std::vector<std::pair<uint32_t, uint32_t>> bonds;
        for (const auto& [a, b] : m.custom_bonds) {
            bonds.emplace_back(local_of(a), local_of(b));
        }
        std::vector<std::pair<uint32_t, Letter>> controls;
        for (const auto& [q, axis] : m.custom_controls) {
            controls.emplace_back(local_of(q), axis);
        }
        psys = build_module_parameterized(static_cast<uint32_t>(m.qubits.size()), bonds,
                                          controls);
    }

    std::string key = (representative && m.kind != TemplateKind::Custom)
                          ? std::string("template:") + template_name(m.kind)
                          : "module:" + m.id;
    uint64_t sub_seed = splitmix64(seed ^ fnv1a64(key));
    return instantiate_parameters(psys, sub_seed);
}

ControlSystem layout_to_system(const DeviceLayout& layout, uint64_t seed,
                               bool include_redundant) {
    layout.validate();
    uint32_t n = layout.qubit_count;

    std::vector<std::pair<Rational, SkewOperator>> drift_parts;
    std::vector<SkewOperator> controls;
    std::vector<std::string> labels;
    bool dropped = false;
    for (size_t mi = 0; mi < layout.modules.size(); ++mi) {
        const ModuleSpec& m = layout.modules[mi];
        ControlSystem local = module_system(layout, mi, seed, /*representative=*/false);
        drift_parts.emplace_back(Rational(1), embed_at(local.drift(), n, m.qubits));
        for (size_t ck = 0; ck < local.controls().size(); ++ck) {
            controls.push_back(embed_at(local.controls()[ck], n, m.qubits));
            labels.push_back(m.id + "." + local.control_labels()[ck]);
        }
        dropped = dropped || local.dropped_identity();
    }
    for (size_t lk = 0; lk < layout.links.size(); ++lk) {
        const LinkSpec& l = layout.links[lk];
        EntanglingCoupling coupling{l.qubit_a, l.qubit_b, l.c};
        if (l.redundant) {
            if (include_redundant) {
                drift_parts.emplace_back(Rational(1), coupling.to_operator(n));
            }
            continue;
        }
        controls.push_back(coupling.to_operator(n));
        labels.push_back("link" + std::to_string(lk));
    }
    SkewOperator drift =
        drift_parts.empty() ? SkewOperator::zero(n) : scale_add(drift_parts);
    return ControlSystem(n, std::move(drift), std::move(controls), std::move(labels), dropped);
}

}  // namespace qontrol
