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

#ifndef QONTROL_LAYOUT_HPP
#define QONTROL_LAYOUT_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qontrol/certify.hpp"
#include "qontrol/control_system.hpp"
#include "qontrol/parameters.hpp"

namespace qontrol {

/// Module blueprints. T5: five-qubit T shape, bonds (0,1),(1,2),(1,3),(3,4),
/// X controls on 1 and 3. L5: five-qubit line, bonds (0,1),(1,2),(2,3),(3,4),
/// X controls on 1 and 2. L4: four-qubit line, bonds (0,1),(1,2),(2,3),
/// X controls on 1 and 2. Custom modules spell out their own bonds/controls.
enum class TemplateKind : uint8_t { T5, L5, L4, Custom };

const char* template_name(TemplateKind k);
TemplateKind template_from_name(std::string_view name);  // throws on unknown
uint32_t template_size(TemplateKind k);                  // Custom is an error

/// Drift family shared by all modules: -(omega_q/2) Z on each qubit plus
/// J_ab (X_a X_b + Y_a Y_b) on each bond, parameters in declaration order
/// omega0..omega_{n-1} then J<a><b> per bond. Controls are single-qubit X.
ParameterizedSystem build_template(TemplateKind k);

struct LayoutParseError : Error {
    LayoutParseError(size_t line, const std::string& message);
    size_t line;
};

struct ModuleSpec {
    std::string id;
    TemplateKind kind = TemplateKind::Custom;
    std::vector<uint32_t> qubits;  // global ids, local index = position
    // Custom only; global ids. Template modules derive these. The only
    // static-coupling kind in scope is XX+YY, so bonds carry no kind field;
    // the parser rejects anything but XXYY.
    std::vector<std::pair<uint32_t, uint32_t>> custom_bonds;
    std::vector<std::pair<uint32_t, Letter>> custom_controls;  // (qubit, axis)

    /// Bonds/controls in global ids, derived for template modules
    /// (templates control X on their designated qubits).
    std::vector<std::pair<uint32_t, uint32_t>> bonds() const;
    std::vector<std::pair<uint32_t, Letter>> controls() const;
};

struct LinkSpec {
    std::string module_a, module_b;
    uint32_t qubit_a = 0, qubit_b = 0;    // global; qubit_a in module_a
    std::array<Rational, 9> c{};          // coupling matrix, row-major
    bool redundant = false;               // present in hardware, unused for certification
};

/// Parsed device description. Modules partition qubits 0..qubit_count-1.
struct DeviceLayout {
    std::string name;
    uint32_t qubit_count = 0;
    std::vector<ModuleSpec> modules;
    std::vector<LinkSpec> links;  // redundant entries carry the flag

    /// Structural checks (unique ids, exact qubit partition, link endpoints
    /// inside the named modules, link matrices not all zero). Throws
    /// qontrol::Error with a description on violation.
    void validate() const;

    size_t module_index(std::string_view id) const;  // throws on unknown id
    size_t active_link_count() const;                // non-redundant
};

/// Parses the line-oriented layout grammar (case-sensitive keywords,
/// `#` starts a comment anywhere on a line):
///   device <name> qubits <N>
///   module <id> template <T5|L5|L4> at <q0,q1,...>
///   module <id> custom at <q,...> controls <q:axis,...> static <(a,b):XXYY,...>
///   link <idA>:<qa> <idB>:<qb> [c <9 space-separated reals, row-major>]
///   redundant <idA>:<qa> <idB>:<qb> [c <...>]
/// Custom `controls`/`static` lists are optional and may be empty. Coupling
/// entries are exact rationals; without `c` a link is pure XX. Throws
/// LayoutParseError on malformed input (line 0 marks file-level invariant
/// violations); the parsed layout is validated before return.
DeviceLayout parse_layout(std::string_view text);
DeviceLayout read_layout(const std::string& path);

/// Canonical rendering; emit -> parse -> emit is byte-stable.
std::string emit_layout(const DeviceLayout& layout);

/// A generated multi-module design: the listed templates tiled onto
/// contiguous qubit blocks in order, one entangling link per tree edge
/// (attached at the last local qubit of the lower-indexed module and the
/// first local qubit of the higher-indexed one, pure XX). Edges must form a
/// spanning tree of the modules.
struct CompositePlan {
    std::string name;
    std::vector<TemplateKind> modules;
    std::vector<std::pair<uint32_t, uint32_t>> edges;

    static std::vector<std::pair<uint32_t, uint32_t>> chain(uint32_t module_count);
};

DeviceLayout generate_composite(const CompositePlan& plan);

/// Local concrete system of one module. Representative instantiation keys
/// the parameter seed by template kind (so equal templates share systems and
/// closure results are reusable by content hash); otherwise by module id
/// (independent parameters per instance). Custom modules always key by id.
ControlSystem module_system(const DeviceLayout& layout, size_t module_index, uint64_t seed,
                            bool representative);

/// The whole device as one concrete system: per-module drifts with
/// independent per-module parameters, module X controls, and one control
/// generator per non-redundant link (the tunable couplings). Redundant
/// couplers join the drift only when `include_redundant` is set.
ControlSystem layout_to_system(const DeviceLayout& layout, uint64_t seed,
                               bool include_redundant = false);

}  // namespace qontrol

#endif
