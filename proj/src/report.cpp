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

#include "qontrol/report.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "qontrol/layout.hpp"
#include "qontrol/moves.hpp"
#include "qontrol/util.hpp"

namespace qontrol {

using nlohmann::json;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string full_dim_string(uint32_t n) {
    Int full;
    mpz_ui_pow_ui(full.get_mpz_t(), 4, n);
    full -= 1;
    return full.get_str();
}

ModuleResult result_row(std::string id, std::string template_nm, uint64_t seed,
                        uint32_t qubits, const ClosureReport& closure, uint64_t hash,
                        bool cached, double seconds) {
    ModuleResult row;
    row.id = std::move(id);
    row.template_name = std::move(template_nm);
    row.seed = seed;
    row.qubits = qubits;
    row.dimension = closure.dimension;
    row.full_dimension = closure.full_dimension.get_str();
    row.controllable = closure.controllable;
    row.truncated = closure.truncated;
    row.reason = closure.truncation_reason;
    row.cached = cached;
    row.hash = hex16(hash);
    row.max_depth = closure.max_depth;
    row.seconds = seconds;
    return row;
}

ModuleResult guard_row(std::string id, uint64_t seed, uint32_t qubits, uint64_t hash) {
    ModuleResult row;
    row.id = std::move(id);
    row.seed = seed;
    row.qubits = qubits;
    row.dimension = 0;
    row.full_dimension = full_dim_string(qubits);
    row.controllable = false;
    row.truncated = true;
    row.reason = "qubit-guard";
    row.hash = hex16(hash);
    return row;
}

ClosureOptions closure_options(ArithMode arithmetic, double tolerance, uint32_t max_depth,
                               bool force) {
    ClosureOptions options;
    options.arithmetic = arithmetic;
    options.float_tolerance = tolerance;
    options.caps.max_depth = max_depth;
    options.force = force;
    return options;
}

// Spanning forest over modules from the non-redundant links, first come
// first serve; links closing a cycle are excluded from certification and
// reported. Returns per-link tree membership.
struct LinkForest {
    std::vector<size_t> tree_links;   // indices into layout.links
    std::vector<size_t> cycle_links;  // excluded
    bool connected = false;
};

LinkForest link_forest(const DeviceLayout& layout) {
    LinkForest forest;
    size_t count = layout.modules.size();
    std::vector<size_t> parent(count);
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&parent](size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    size_t merged = 0;
    for (size_t lk = 0; lk < layout.links.size(); ++lk) {
        const LinkSpec& l = layout.links[lk];
        if (l.redundant) {
            continue;
        }
        size_t ra = find(layout.module_index(l.module_a));
        size_t rb = find(layout.module_index(l.module_b));
        if (ra == rb) {
            forest.cycle_links.push_back(lk);
            continue;
        }
        parent[ra] = rb;
        ++merged;
        forest.tree_links.push_back(lk);
    }
    forest.connected = merged + 1 == count;
    return forest;
}

int status_rank(CertStatus s) {
    switch (s) {
        case CertStatus::invalid:
            return 2;
        case CertStatus::indeterminate:
            return 1;
        default:
            return 0;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// exit codes and renderings
// ---------------------------------------------------------------------------

int exit_code_of(const RunReport& report) {
    if (!report.error.empty()) {
        return kExitInputError;
    }
    if (report.verify_passed.has_value()) {
        return *report.verify_passed ? kExitOk : kExitNegative;
    }
    if (report.command == "audit") {
        for (const LinkAuditResult& a : report.audits) {
            if (a.failures > 0) {
                return kExitNegative;
            }
        }
        return kExitOk;
    }
    if (report.composite_status.has_value()) {
        if (*report.composite_status == "valid") {
            return kExitOk;
        }
        if (*report.composite_status == "invalid") {
            return kExitNegative;
        }
        return kExitIndeterminate;
    }
    if (report.command == "dim") {
        for (const ModuleResult& m : report.modules) {
            if (m.truncated) {
                return kExitIndeterminate;
            }
        }
        return kExitOk;
    }
    // Direct check: a definitive negative beats an indeterminate row.
    bool any_truncated = false;
    for (const ModuleResult& m : report.modules) {
        if (!m.truncated && !m.controllable) {
            return kExitNegative;
        }
        any_truncated = any_truncated || m.truncated;
    }
    return any_truncated ? kExitIndeterminate : kExitOk;
}

std::string render_text(const RunReport& report) {
    std::ostringstream out;
    out << kToolName << " " << kToolVersion << " " << report.command;
    if (!report.input_path.empty()) {
        out << " " << report.input_path;
    }
    out << "\n";
    if (!report.error.empty()) {
        out << "error: " << report.error << "\n";
        out << "result: input error (exit " << exit_code_of(report) << ")\n";
        return out.str();
    }
    if (!report.mode.empty() || !report.arithmetic.empty()) {
        out << "mode " << (report.mode.empty() ? "-" : report.mode) << ", arithmetic "
            << (report.arithmetic.empty() ? "-" : report.arithmetic) << ", seeds [";
        for (size_t i = 0; i < report.seeds.size(); ++i) {
            out << (i ? "," : "") << report.seeds[i];
        }
        out << "]\n";
    }
    for (const ModuleResult& m : report.modules) {
        out << (m.template_name.empty() ? "device " : "module ") << m.id;
        if (!m.template_name.empty()) {
            out << " " << m.template_name;
        }
        out << " n=" << m.qubits << " seed=" << m.seed << ": dimension " << m.dimension
            << " / " << m.full_dimension;
        if (m.truncated) {
            out << " truncated (" << m.reason << ")";
        } else {
            out << (m.controllable ? " controllable" : " not controllable");
        }
        out << " depth=" << m.max_depth;
        if (m.cached) {
            out << " [cached]";
        } else if (!m.truncated) {
            out << fmt::format(" ({:.2f}s)", m.seconds);
        }
        out << "\n";
    }
    if (!report.depth_profile.empty()) {
        out << "depth profile:";
        for (uint64_t d : report.depth_profile) {
            out << " " << d;
        }
        out << "\n";
    }
    if (report.composite_status.has_value()) {
        out << "composite: " << *report.composite_status;
        if (!report.composite_reason.empty()) {
            out << " (" << report.composite_reason << ")";
        }
        out << "\n";
    }
    if (report.resources.has_value()) {
        out << "resources: " << report.resources->local_controls << " local controls, "
            << report.resources->static_couplings << " static couplings, "
            << report.resources->tunable_couplings << " tunable couplings\n";
    }
    for (const LinkAuditResult& a : report.audits) {
        out << a.label << ": " << a.samples << " samples, " << a.passes << " passed, "
            << a.failures << " failed\n";
        for (const std::string& note : a.failure_notes) {
            out << "  " << note << "\n";
        }
    }
    for (const VerifyCheck& c : report.verify_checks) {
        out << "check " << c.name << ": " << (c.passed ? "pass" : "FAIL");
        if (!c.detail.empty()) {
            out << " (" << c.detail << ")";
        }
        out << "\n";
    }
    if (!report.certificate_path.empty()) {
        out << "certificate written: " << report.certificate_path << "\n";
    }
    for (const std::string& note : report.notes) {
        out << "note: " << note << "\n";
    }
    int code = exit_code_of(report);
    const char* verdict = code == kExitOk            ? "ok"
                          : code == kExitNegative    ? "negative"
                          : code == kExitIndeterminate ? "indeterminate"
                                                       : "input error";
    out << fmt::format("result: {} (exit {}) [{:.2f}s]\n", verdict, code,
                       report.total_seconds);
    return out.str();
}

json render_machine(const RunReport& report) {
    json doc;
    doc["tool"] = json{{"name", kToolName}, {"version", kToolVersion}};
    doc["command"] = report.command;
    doc["input"] = report.input_path;
    doc["exit"] = exit_code_of(report);
    if (!report.error.empty()) {
        doc["error"] = report.error;
        return doc;
    }
    if (!report.mode.empty()) {
        doc["mode"] = report.mode;
    }
    if (!report.arithmetic.empty()) {
        doc["arithmetic"] = report.arithmetic;
    }
    if (!report.seeds.empty()) {
        doc["seeds"] = report.seeds;
    }
    if (!report.modules.empty()) {
        json rows = json::array();
        for (const ModuleResult& m : report.modules) {
            rows.push_back(json{{"id", m.id},
                                {"template", m.template_name},
                                {"seed", m.seed},
                                {"qubits", m.qubits},
                                {"dimension", m.dimension},
                                {"full_dimension", m.full_dimension},
                                {"controllable", m.controllable},
                                {"truncated", m.truncated},
                                {"reason", m.reason},
                                {"cached", m.cached},
                                {"hash", m.hash},
                                {"max_depth", m.max_depth}});
        }
        doc["modules"] = rows;
    }
    if (!report.depth_profile.empty()) {
        doc["depth_profile"] = report.depth_profile;
    }
    if (report.composite_status.has_value()) {
        doc["composite"] =
            json{{"status", *report.composite_status}, {"reason", report.composite_reason}};
    }
    if (report.resources.has_value()) {
        doc["resources"] = json{{"local_controls", report.resources->local_controls},
                                {"static_couplings", report.resources->static_couplings},
                                {"tunable_couplings", report.resources->tunable_couplings}};
    }
    if (!report.audits.empty()) {
        json rows = json::array();
        for (const LinkAuditResult& a : report.audits) {
            rows.push_back(json{{"label", a.label},
                                {"samples", a.samples},
                                {"passes", a.passes},
                                {"failures", a.failures},
                                {"failure_notes", a.failure_notes}});
        }
        doc["audits"] = rows;
    }
    if (report.verify_passed.has_value()) {
        json checks = json::array();
        for (const VerifyCheck& c : report.verify_checks) {
            checks.push_back(
                json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        }
        doc["verify"] = json{{"passed", *report.verify_passed}, {"checks", checks}};
    }
    if (!report.certificate_path.empty()) {
        doc["certificate"] = report.certificate_path;
    }
    if (!report.notes.empty()) {
        doc["notes"] = report.notes;
    }
    return doc;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

namespace {

// One whole-device closure row (direct & dim share this path).
ModuleResult close_whole_device(const DeviceLayout& layout, uint64_t seed,
                                const ClosureOptions& options, ClosureReport* out_report,
                                std::vector<std::string>* notes) {
    ControlSystem system = layout_to_system(layout, seed);
    uint64_t hash = system.content_hash();
    uint32_t n = system.num_qubits();
    if (n > 16 && !options.force) {
        if (notes) {
            notes->push_back("closure refused: " + std::to_string(n) +
                             " qubits exceeds the 8-qubit guard; use compose mode");
        }
        ModuleResult row = guard_row(layout.name, seed, n, hash);
        if (out_report) {
            ClosureReport r;
            r.full_dimension = Int(row.full_dimension);
            r.truncated = true;
            r.truncation_reason = "qubit-guard";
            r.arithmetic = options.arithmetic;
            *out_report = r;
        }
        return row;
    }
    double t0 = now_seconds();
    auto [basis, closure] = lie_closure(system, options);
    double dt = now_seconds() - t0;
    if (closure.truncated && closure.truncation_reason == "qubit-guard" && notes) {
        notes->push_back("closure refused: " + std::to_string(n) +
                         " qubits exceeds the 8-qubit guard; pass --force or use compose "
                         "mode");
    }
    if (out_report) {
        *out_report = closure;
    }
    return result_row(layout.name, "", seed, n, closure, hash, false, dt);
}

struct ComposeSeedOutcome {
    CertStatus status = CertStatus::valid;
    std::string reason;
    std::shared_ptr<const Certificate> root;
};

ComposeSeedOutcome compose_for_seed(const DeviceLayout& layout, uint64_t seed,
                                    const ClosureOptions& options, const LinkForest& forest,
                                    RunReport& report) {
    ComposeSeedOutcome outcome;
    // Leaf certificates, one per module; closure results shared between
    // byte-identical leaf systems (representative instantiation makes equal
    // templates identical).
    std::map<std::string, std::shared_ptr<const Certificate>> by_text;
    std::vector<std::shared_ptr<const Certificate>> leaves;
    for (size_t mi = 0; mi < layout.modules.size(); ++mi) {
        const ModuleSpec& m = layout.modules[mi];
        ControlSystem system = module_system(layout, mi, seed, /*representative=*/true);
        std::string key = system.canonical_text();
        auto hit = by_text.find(key);
        std::shared_ptr<const Certificate> leaf;
        bool cached = hit != by_text.end();
        double dt = 0.0;
        if (cached) {
            auto copy = std::make_shared<Certificate>(*hit->second);
            copy->qubit_map = m.qubits;
            leaf = std::move(copy);
        } else {
            double t0 = now_seconds();
            leaf = std::make_shared<Certificate>(certify_direct(system, options, m.qubits));
            dt = now_seconds() - t0;
            by_text.emplace(std::move(key), leaf);
        }
        report.modules.push_back(result_row(m.id, template_name(m.kind), seed,
                                            static_cast<uint32_t>(m.qubits.size()),
                                            leaf->closure, leaf->system_hash, cached, dt));
        if (leaf->status == CertStatus::invalid && outcome.status != CertStatus::invalid) {
            outcome.status = CertStatus::invalid;
            outcome.reason = "module " + m.id + " is not controllable: " + leaf->reason;
        } else if (leaf->status == CertStatus::indeterminate &&
                   outcome.status == CertStatus::valid) {
            outcome.status = CertStatus::indeterminate;
            outcome.reason = "module " + m.id + ": " + leaf->reason;
        }
        leaves.push_back(std::move(leaf));
    }
    if (outcome.status == CertStatus::invalid) {
        return outcome;  // composition refuses invalid children
    }
    if (!forest.connected) {
        outcome.status = CertStatus::invalid;
        outcome.reason = "the link graph does not connect all modules";
        return outcome;
    }

    // Merge along the spanning forest, first come first serve.
    std::vector<size_t> parent(layout.modules.size());
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&parent](size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    std::vector<std::shared_ptr<const Certificate>> cert_of(leaves.begin(), leaves.end());
    for (size_t lk : forest.tree_links) {
        const LinkSpec& l = layout.links[lk];
        size_t ra = find(layout.module_index(l.module_a));
        size_t rb = find(layout.module_index(l.module_b));
        EntanglingCoupling coupling{l.qubit_a, l.qubit_b, l.c};
        auto joined =
            std::make_shared<Certificate>(compose(cert_of[ra], cert_of[rb], coupling));
        parent[ra] = rb;
        cert_of[find(rb)] = joined;
        outcome.root = joined;
    }
    if (layout.modules.size() == 1) {
        outcome.root = cert_of[0];
    }
    if (outcome.root) {
        outcome.status = outcome.root->status;
        if (outcome.status != CertStatus::valid && outcome.reason.empty()) {
            outcome.reason = outcome.root->reason;
        }
    }
    return outcome;
}

}  // namespace

RunReport run_check(const CheckOptions& options) {
    RunReport report;
    report.command = "check";
    report.input_path = options.layout_path;
    report.arithmetic = arith_mode_name(options.arithmetic);
    double t0 = now_seconds();

    uint32_t seed_count = std::max<uint32_t>(1, options.seed_count);
    for (uint32_t k = 0; k < seed_count; ++k) {
        report.seeds.push_back(options.seed + k);
    }

    try {
        DeviceLayout layout = read_layout(options.layout_path);
        std::string mode = options.mode;
        if (mode == "auto") {
            mode = layout.active_link_count() > 0 ? "compose" : "direct";
        }
        if (mode != "direct" && mode != "compose") {
            throw Error("unknown mode: " + options.mode);
        }
        report.mode = mode;
        report.resources = resource_count(layout);
        ClosureOptions copts = closure_options(options.arithmetic, options.float_tolerance,
                                               options.max_depth, options.force);

        if (mode == "direct") {
            if (layout.qubit_count > 16 && options.force) {
                throw Error("cannot run a direct closure beyond 16 qubits");
            }
            for (uint64_t seed : report.seeds) {
                report.modules.push_back(
                    close_whole_device(layout, seed, copts, nullptr, &report.notes));
            }
        } else {
            LinkForest forest = link_forest(layout);
            for (size_t lk : forest.cycle_links) {
                report.notes.push_back("link" + std::to_string(lk) +
                                       " closes a cycle; excluded from the certificate tree");
            }
            CertStatus overall = CertStatus::valid;
            std::string overall_reason;
            std::shared_ptr<const Certificate> first_root;
            for (uint64_t seed : report.seeds) {
                ComposeSeedOutcome outcome =
                    compose_for_seed(layout, seed, copts, forest, report);
                if (status_rank(outcome.status) > status_rank(overall)) {
                    overall = outcome.status;
                    overall_reason = outcome.reason;
                }
                if (!first_root && outcome.root) {
                    first_root = outcome.root;
                }
            }
            report.composite_status = cert_status_name(overall);
            report.composite_reason = overall_reason;
            if (!options.certificate_out.empty()) {
                if (first_root) {
                    write_certificate(*first_root, options.certificate_out);
                    report.certificate_path = options.certificate_out;
                } else {
                    report.notes.push_back("no certificate written: composition failed");
                }
            }
        }
    } catch (const Error& e) {
        report.error = e.what();
    }
    report.total_seconds = now_seconds() - t0;
    return report;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

RunReport run_verify(const VerifyOptions& options) {
    RunReport report;
    report.command = "verify";
    report.input_path = options.certificate_path;
    double t0 = now_seconds();
    try {
        Certificate cert = read_certificate(options.certificate_path);
        report.composite_status = cert_status_name(cert.status);
        report.composite_reason = cert.reason;
        report.resources = resource_count(cert);
        VerifyReport vr = verify(cert, options.effort);
        report.verify_passed = vr.passed;
        report.verify_checks = vr.checks;
        report.notes.push_back("leaves " + std::to_string(cert.leaf_count()) + ", links " +
                               std::to_string(cert.link_count()) + ", qubits " +
                               std::to_string(cert.total_qubits()));
    } catch (const Error& e) {
        report.error = e.what();
    }
    report.total_seconds = now_seconds() - t0;
    return report;
}

// ---------------------------------------------------------------------------
// audit
// ---------------------------------------------------------------------------

RunReport run_audit(const AuditOptions& options) {
    RunReport report;
    report.command = "audit";
    report.input_path = options.layout_path;
    report.seeds.push_back(options.seed);
    double t0 = now_seconds();
    try {
        DeviceLayout layout = read_layout(options.layout_path);
        if (layout.active_link_count() == 0) {
            throw Error("the layout has no links to audit");
        }
        LinkForest forest = link_forest(layout);
        for (size_t lk : forest.cycle_links) {
            report.notes.push_back("link" + std::to_string(lk) +
                                   " closes a cycle; not audited");
        }

        // Adjacency over modules restricted to tree links; removing one tree
        // link splits the modules in two, which fixes the audit partition.
        size_t module_count = layout.modules.size();
        std::vector<std::vector<std::pair<size_t, size_t>>> adjacent(module_count);
        for (size_t lk : forest.tree_links) {
            const LinkSpec& l = layout.links[lk];
            size_t a = layout.module_index(l.module_a);
            size_t b = layout.module_index(l.module_b);
            adjacent[a].emplace_back(b, lk);
            adjacent[b].emplace_back(a, lk);
        }

        for (size_t lk : forest.tree_links) {
            const LinkSpec& l = layout.links[lk];
            size_t start = layout.module_index(l.module_a);
            // Modules on module_a's side once the link is removed.
            std::vector<bool> seen(module_count, false);
            std::vector<size_t> stack{start};
            seen[start] = true;
            while (!stack.empty()) {
                size_t at = stack.back();
                stack.pop_back();
                for (const auto& [next, via] : adjacent[at]) {
                    if (via == lk || seen[next]) {
                        continue;
                    }
                    seen[next] = true;
                    stack.push_back(next);
                }
            }
            std::vector<uint32_t> side_a;
            for (size_t mi = 0; mi < module_count; ++mi) {
                if (seen[mi]) {
                    side_a.insert(side_a.end(), layout.modules[mi].qubits.begin(),
                                  layout.modules[mi].qubits.end());
                }
            }

            std::string label = "link" + std::to_string(lk) + " " + l.module_a + ":" +
                                std::to_string(l.qubit_a) + " " + l.module_b + ":" +
                                std::to_string(l.qubit_b);
            LinkAuditResult row;
            row.label = label;
            EntanglingCoupling coupling{l.qubit_a, l.qubit_b, l.c};
            SkewOperator coupling_op = coupling.to_operator(layout.qubit_count);
            auto component = coupling.first_nonzero();
            SkewOperator seed_term = isolate_coupling_term(
                coupling_op, l.qubit_a, l.qubit_b, component->first, component->second);
            Partition part = Partition::of(layout.qubit_count, side_a);
            AuditReport audit = sample_basis_audit(
                seed_term, part, options.samples,
                splitmix64(options.seed ^ fnv1a64(label)));
            row.samples = audit.samples;
            row.passes = audit.passes;
            row.failures = audit.failures;
            row.failure_notes = audit.failure_notes;
            report.audits.push_back(std::move(row));
        }
    } catch (const Error& e) {
        report.error = e.what();
    }
    report.total_seconds = now_seconds() - t0;
    return report;
}

// ---------------------------------------------------------------------------
// dim
// ---------------------------------------------------------------------------

RunReport run_dim(const DimOptions& options) {
    RunReport report;
    report.command = "dim";
    report.input_path = options.layout_path;
    report.arithmetic = arith_mode_name(options.arithmetic);
    report.seeds.push_back(options.seed);
    double t0 = now_seconds();
    try {
        DeviceLayout layout = read_layout(options.layout_path);
        if (layout.qubit_count > 16 && options.force) {
            throw Error("cannot run a direct closure beyond 16 qubits");
        }
        ClosureOptions copts = closure_options(options.arithmetic, options.float_tolerance,
                                               options.max_depth, options.force);
        ClosureReport closure;
        report.modules.push_back(
            close_whole_device(layout, options.seed, copts, &closure, &report.notes));
        report.depth_profile = closure.depth_profile;
    } catch (const Error& e) {
        report.error = e.what();
    }
    report.total_seconds = now_seconds() - t0;
    return report;
}

}  // namespace qontrol
