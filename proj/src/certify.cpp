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

#include "qontrol/certify.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qontrol/layout.hpp"
#include "qontrol/moves.hpp"
#include "qontrol/util.hpp"

namespace qontrol {

using nlohmann::json;

const char* cert_status_name(CertStatus s) {
    switch (s) {
        case CertStatus::valid:
            return "valid";
        case CertStatus::invalid:
            return "invalid";
        default:
            return "indeterminate";
    }
}

namespace {

CertStatus cert_status_from_name(const std::string& name) {
    if (name == "valid") {
        return CertStatus::valid;
    }
    if (name == "invalid") {
        return CertStatus::invalid;
    }
    if (name == "indeterminate") {
        return CertStatus::indeterminate;
    }
    throw Error("unknown certificate status: " + name);
}

json skew_op_to_json(const SkewOperator& op) {
    json terms = json::array();
    for (const auto& [w, c] : op.terms()) {
        terms.push_back(json::array({w.str(), rational_to_string(c)}));
    }
    return terms;
}

SkewOperator skew_op_from_json(const json& j, uint32_t n) {
    std::vector<SkewOperator::Term> terms;
    for (const auto& entry : j) {
        terms.emplace_back(PauliWord::from_string(entry.at(0).get<std::string>()),
                           parse_rational(entry.at(1).get<std::string>()));
    }
    return SkewOperator::from_terms(n, std::move(terms));
}

json system_to_json(const ControlSystem& sys) {
    json controls = json::array();
    for (size_t k = 0; k < sys.controls().size(); ++k) {
        controls.push_back(json{{"label", sys.control_labels()[k]},
                                {"terms", skew_op_to_json(sys.controls()[k])}});
    }
    return json{{"qubits", sys.num_qubits()},
                {"drift", skew_op_to_json(sys.drift())},
                {"controls", controls}};
}

ControlSystem system_from_json(const json& j) {
    uint32_t n = j.at("qubits").get<uint32_t>();
    SkewOperator drift = skew_op_from_json(j.at("drift"), n);
    std::vector<SkewOperator> controls;
    std::vector<std::string> labels;
    for (const auto& c : j.at("controls")) {
        labels.push_back(c.at("label").get<std::string>());
        controls.push_back(skew_op_from_json(c.at("terms"), n));
    }
    return ControlSystem(n, std::move(drift), std::move(controls), std::move(labels));
}

json closure_report_to_json(const ClosureReport& r) {
    return json{{"dimension", r.dimension},
                {"full_dimension", r.full_dimension.get_str()},
                {"controllable", r.controllable},
                {"max_depth", r.max_depth},
                {"depth_profile", r.depth_profile},
                {"brackets_evaluated", r.brackets_evaluated},
                {"arithmetic", arith_mode_name(r.arithmetic)},
                {"truncated", r.truncated},
                {"truncation_reason", r.truncation_reason}};
}

ClosureReport closure_report_from_json(const json& j) {
    ClosureReport r;
    r.dimension = j.at("dimension").get<uint64_t>();
    r.full_dimension = Int(j.at("full_dimension").get<std::string>());
    r.controllable = j.at("controllable").get<bool>();
    r.max_depth = j.at("max_depth").get<uint32_t>();
    r.depth_profile = j.at("depth_profile").get<std::vector<uint64_t>>();
    r.brackets_evaluated = j.at("brackets_evaluated").get<uint64_t>();
    std::string arith = j.at("arithmetic").get<std::string>();
    r.arithmetic = arith == "float" ? ArithMode::floating : ArithMode::exact;
    r.truncated = j.at("truncated").get<bool>();
    r.truncation_reason = j.at("truncation_reason").get<std::string>();
    return r;
}

json coupling_to_json(const EntanglingCoupling& c) {
    json mat = json::array();
    for (const Rational& v : c.c) {
        mat.push_back(rational_to_string(v));
    }
    return json{{"qubit_a", c.qubit_a}, {"qubit_b", c.qubit_b}, {"c", mat}};
}

EntanglingCoupling coupling_from_json(const json& j) {
    EntanglingCoupling c;
    c.qubit_a = j.at("qubit_a").get<uint32_t>();
    c.qubit_b = j.at("qubit_b").get<uint32_t>();
    const json& mat = j.at("c");
    if (mat.size() != 9) {
        throw Error("coupling matrix must have nine entries");
    }
    for (size_t k = 0; k < 9; ++k) {
        c.c[k] = parse_rational(mat.at(k).get<std::string>());
    }
    return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// EntanglingCoupling
// ---------------------------------------------------------------------------

EntanglingCoupling EntanglingCoupling::pure_xx(uint32_t qa, uint32_t qb) {
    EntanglingCoupling c;
    c.qubit_a = qa;
    c.qubit_b = qb;
    c.at(Letter::X, Letter::X) = 1;
    return c;
}

const Rational& EntanglingCoupling::at(Letter alpha, Letter j) const {
    if (alpha == Letter::I || j == Letter::I) {
        throw Error("coupling components are indexed by non-identity letters");
    }
    return c[3 * (static_cast<size_t>(alpha) - 1) + (static_cast<size_t>(j) - 1)];
}

Rational& EntanglingCoupling::at(Letter alpha, Letter j) {
    if (alpha == Letter::I || j == Letter::I) {
        throw Error("coupling components are indexed by non-identity letters");
    }
    return c[3 * (static_cast<size_t>(alpha) - 1) + (static_cast<size_t>(j) - 1)];
}

bool EntanglingCoupling::any_nonzero() const {
    for (const Rational& v : c) {
        if (sgn(v) != 0) {
            return true;
        }
    }
    return false;
}

std::optional<std::pair<Letter, Letter>> EntanglingCoupling::first_nonzero() const {
    for (size_t k = 0; k < 9; ++k) {
        if (sgn(c[k]) != 0) {
            return std::make_pair(static_cast<Letter>(1 + k / 3),
                                  static_cast<Letter>(1 + k % 3));
        }
    }
    return std::nullopt;
}

SkewOperator EntanglingCoupling::to_operator(uint32_t total_qubits) const {
    if (qubit_a == qubit_b || qubit_a >= total_qubits || qubit_b >= total_qubits) {
        throw Error("coupling qubits must be two distinct in-range qubits");
    }
    std::vector<SkewOperator::Term> terms;
    for (size_t k = 0; k < 9; ++k) {
        if (sgn(c[k]) == 0) {
            continue;
        }
        Letter alpha = static_cast<Letter>(1 + k / 3);
        Letter j = static_cast<Letter>(1 + k % 3);
        terms.emplace_back(
            PauliWord::single(total_qubits, qubit_a, alpha).with_letter(qubit_b, j), c[k]);
    }
    return SkewOperator::from_terms(total_qubits, std::move(terms));
}

// ---------------------------------------------------------------------------
// Certificate
// ---------------------------------------------------------------------------

std::vector<uint32_t> Certificate::qubits() const {
    if (kind == Kind::direct) {
        std::vector<uint32_t> q = qubit_map;
        std::sort(q.begin(), q.end());
        return q;
    }
    std::vector<uint32_t> qa = child_a->qubits();
    std::vector<uint32_t> qb = child_b->qubits();
    std::vector<uint32_t> out;
    out.reserve(qa.size() + qb.size());
    std::merge(qa.begin(), qa.end(), qb.begin(), qb.end(), std::back_inserter(out));
    return out;
}

uint32_t Certificate::total_qubits() const {
    return static_cast<uint32_t>(qubits().size());
}

uint64_t Certificate::leaf_count() const {
    if (kind == Kind::direct) {
        return 1;
    }
    return child_a->leaf_count() + child_b->leaf_count();
}

uint64_t Certificate::link_count() const {
    if (kind == Kind::direct) {
        return 0;
    }
    return 1 + child_a->link_count() + child_b->link_count();
}

json Certificate::to_json() const {
    json node{{"kind", kind == Kind::direct ? "direct" : "composite"},
              {"status", cert_status_name(status)},
              {"reason", reason}};
    if (kind == Kind::direct) {
        node["qubit_map"] = qubit_map;
        node["system_hash"] = hex16(system_hash);
        node["closure"] = closure_report_to_json(closure);
        node["system"] = system_to_json(*system);
    } else {
        node["coupling"] = coupling_to_json(coupling);
        node["children"] = json::array({child_a->to_json(), child_b->to_json()});
    }
    return node;
}

Certificate Certificate::from_json(const json& j) {
    Certificate cert;
    std::string kind = j.at("kind").get<std::string>();
    cert.status = cert_status_from_name(j.at("status").get<std::string>());
    cert.reason = j.at("reason").get<std::string>();
    if (kind == "direct") {
        cert.kind = Kind::direct;
        cert.qubit_map = j.at("qubit_map").get<std::vector<uint32_t>>();
        std::string hash = j.at("system_hash").get<std::string>();
        cert.system_hash = std::stoull(hash, nullptr, 16);
        cert.closure = closure_report_from_json(j.at("closure"));
        cert.system = std::make_shared<ControlSystem>(system_from_json(j.at("system")));
    } else if (kind == "composite") {
        cert.kind = Kind::composite;
        cert.coupling = coupling_from_json(j.at("coupling"));
        const json& children = j.at("children");
        if (children.size() != 2) {
            throw Error("a composite certificate needs exactly two children");
        }
        cert.child_a = std::make_shared<Certificate>(from_json(children.at(0)));
        cert.child_b = std::make_shared<Certificate>(from_json(children.at(1)));
    } else {
        throw Error("unknown certificate kind: " + kind);
    }
    return cert;
}

std::string Certificate::canonical_text() const {
    json envelope{{"format", "qontrol-certificate"}, {"version", 1}, {"certificate", to_json()}};
    return envelope.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// certify / compose / assemble
// ---------------------------------------------------------------------------

Certificate certify_direct(const ControlSystem& system, const ClosureOptions& options,
                           std::vector<uint32_t> qubit_map) {
    uint32_t n = system.num_qubits();
    if (qubit_map.empty()) {
        qubit_map.resize(n);
        for (uint32_t q = 0; q < n; ++q) {
            qubit_map[q] = q;
        }
    }
    if (qubit_map.size() != n) {
        throw SizeMismatchError("qubit map size must match the system");
    }
    std::vector<uint32_t> sorted = qubit_map;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error("qubit map entries must be distinct");
    }

    Certificate cert;
    cert.kind = Certificate::Kind::direct;
    cert.system = std::make_shared<ControlSystem>(system);
    cert.qubit_map = std::move(qubit_map);
    cert.system_hash = system.content_hash();
    cert.closure = is_controllable(system, options);
    if (cert.closure.truncated) {
        cert.status = CertStatus::indeterminate;
        cert.reason = "closure truncated: " + cert.closure.truncation_reason;
    } else if (cert.closure.controllable) {
        cert.status = CertStatus::valid;
        cert.reason.clear();
    } else {
        cert.status = CertStatus::invalid;
        cert.reason = "closure dimension " + std::to_string(cert.closure.dimension) +
                      " short of " + cert.closure.full_dimension.get_str();
    }
    return cert;
}

Certificate compose(std::shared_ptr<const Certificate> a, std::shared_ptr<const Certificate> b,
                    const EntanglingCoupling& coupling) {
    if (!a || !b) {
        throw Error("compose needs two certificates");
    }
    if (a->status == CertStatus::invalid || b->status == CertStatus::invalid) {
        throw Error("cannot compose an invalid certificate");
    }
    std::vector<uint32_t> qa = a->qubits();
    std::vector<uint32_t> qb = b->qubits();
    std::vector<uint32_t> overlap;
    std::set_intersection(qa.begin(), qa.end(), qb.begin(), qb.end(),
                          std::back_inserter(overlap));
    if (!overlap.empty()) {
        throw Error("certified blocks overlap on qubit " + std::to_string(overlap.front()));
    }
    if (!coupling.any_nonzero()) {
        throw Error("the entangling coupling is identically zero");
    }
    bool a_has_qa = std::binary_search(qa.begin(), qa.end(), coupling.qubit_a);
    bool a_has_qb = std::binary_search(qa.begin(), qa.end(), coupling.qubit_b);
    bool b_has_qa = std::binary_search(qb.begin(), qb.end(), coupling.qubit_a);
    bool b_has_qb = std::binary_search(qb.begin(), qb.end(), coupling.qubit_b);
    bool straddles = (a_has_qa && b_has_qb) || (a_has_qb && b_has_qa);
    if (!straddles) {
        throw Error("the coupling must join one qubit of each certified block");
    }

    Certificate cert;
    cert.kind = Certificate::Kind::composite;
    cert.child_a = std::move(a);
    cert.child_b = std::move(b);
    cert.coupling = coupling;
    if (cert.child_a->status == CertStatus::indeterminate ||
        cert.child_b->status == CertStatus::indeterminate) {
        cert.status = CertStatus::indeterminate;
        cert.reason = "a child certificate is indeterminate";
    } else {
        cert.status = CertStatus::valid;
        cert.reason.clear();
    }
    return cert;
}

namespace {

struct LeafRef {
    const Certificate* leaf;
};

void collect_leaves(const Certificate& cert, std::vector<const Certificate*>& leaves,
                    std::vector<const Certificate*>& joints) {
    if (cert.kind == Certificate::Kind::direct) {
        leaves.push_back(&cert);
        return;
    }
    collect_leaves(*cert.child_a, leaves, joints);
    collect_leaves(*cert.child_b, leaves, joints);
    joints.push_back(&cert);
}

}  // namespace

ControlSystem assemble(const Certificate& cert) {
    std::vector<const Certificate*> leaves;
    std::vector<const Certificate*> joints;
    collect_leaves(cert, leaves, joints);

    std::vector<uint32_t> globals = cert.qubits();
    uint32_t n = static_cast<uint32_t>(globals.size());
    auto dense_index = [&globals](uint32_t global_q) {
        auto it = std::lower_bound(globals.begin(), globals.end(), global_q);
        return static_cast<uint32_t>(it - globals.begin());
    };

    std::vector<std::pair<Rational, SkewOperator>> drift_parts;
    std::vector<SkewOperator> controls;
    std::vector<std::string> labels;
    bool dropped = false;
    for (size_t li = 0; li < leaves.size(); ++li) {
        const Certificate* leaf = leaves[li];
        std::vector<uint32_t> map;
        map.reserve(leaf->qubit_map.size());
        for (uint32_t g : leaf->qubit_map) {
            map.push_back(dense_index(g));
        }
        drift_parts.emplace_back(Rational(1), embed_at(leaf->system->drift(), n, map));
        for (size_t ck = 0; ck < leaf->system->controls().size(); ++ck) {
            controls.push_back(embed_at(leaf->system->controls()[ck], n, map));
            labels.push_back("m" + std::to_string(li) + "." +
                             leaf->system->control_labels()[ck]);
        }
        dropped = dropped || leaf->system->dropped_identity();
    }
    SkewOperator drift =
        drift_parts.empty() ? SkewOperator::zero(n) : scale_add(drift_parts);
    for (size_t jk = 0; jk < joints.size(); ++jk) {
        EntanglingCoupling mapped = joints[jk]->coupling;
        mapped.qubit_a = dense_index(mapped.qubit_a);
        mapped.qubit_b = dense_index(mapped.qubit_b);
        controls.push_back(mapped.to_operator(n));
        labels.push_back("link" + std::to_string(jk));
    }
    return ControlSystem(n, std::move(drift), std::move(controls), std::move(labels), dropped);
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

namespace {

void add_check(VerifyReport& report, std::string name, bool passed, std::string detail) {
    report.checks.push_back(VerifyCheck{std::move(name), passed, std::move(detail)});
    report.passed = report.passed && passed;
}

Int full_dim_of(uint32_t n) {
    Int full;
    mpz_ui_pow_ui(full.get_mpz_t(), 4, n);
    return full - 1;
}

bool status_consistent(const Certificate& cert, std::string* why) {
    if (cert.kind == Certificate::Kind::direct) {
        Int full = full_dim_of(cert.system->num_qubits());
        CertStatus expect;
        if (cert.closure.truncated) {
            expect = CertStatus::indeterminate;
        } else if (!cert.closure.controllable) {
            expect = CertStatus::invalid;
        } else {
            expect = CertStatus::valid;
        }
        if (cert.closure.controllable &&
            (cert.closure.truncated ||
             Int(static_cast<unsigned long>(cert.closure.dimension)) != full)) {
            *why = "leaf claims controllability its closure record does not support";
            return false;
        }
        if (cert.status != expect) {
            *why = std::string("leaf status ") + cert_status_name(cert.status) +
                   " does not match its closure record (" + cert_status_name(expect) + ")";
            return false;
        }
        if (cert.closure.full_dimension != full) {
            *why = "recorded full dimension disagrees with the qubit count";
            return false;
        }
        return true;
    }
    if (cert.child_a->status == CertStatus::invalid ||
        cert.child_b->status == CertStatus::invalid) {
        *why = "composite built over an invalid child";
        return false;
    }
    CertStatus expect = (cert.child_a->status == CertStatus::indeterminate ||
                         cert.child_b->status == CertStatus::indeterminate)
                            ? CertStatus::indeterminate
                            : CertStatus::valid;
    if (cert.status != expect) {
        *why = std::string("composite status ") + cert_status_name(cert.status) +
               " does not follow from its children";
        return false;
    }
    return true;
}

bool walk_consistency(const Certificate& cert, std::string* why) {
    if (cert.kind == Certificate::Kind::direct) {
        if (!cert.system) {
            *why = "leaf without an embedded system";
            return false;
        }
        if (cert.qubit_map.size() != cert.system->num_qubits()) {
            *why = "leaf qubit map does not match its system";
            return false;
        }
        return status_consistent(cert, why);
    }
    if (!cert.child_a || !cert.child_b) {
        *why = "composite without two children";
        return false;
    }
    std::vector<uint32_t> qa = cert.child_a->qubits();
    std::vector<uint32_t> qb = cert.child_b->qubits();
    std::vector<uint32_t> overlap;
    std::set_intersection(qa.begin(), qa.end(), qb.begin(), qb.end(),
                          std::back_inserter(overlap));
    if (!overlap.empty()) {
        *why = "children overlap on qubit " + std::to_string(overlap.front());
        return false;
    }
    if (!cert.coupling.any_nonzero()) {
        *why = "composite with a zero coupling";
        return false;
    }
    bool a_qa = std::binary_search(qa.begin(), qa.end(), cert.coupling.qubit_a);
    bool a_qb = std::binary_search(qa.begin(), qa.end(), cert.coupling.qubit_b);
    bool b_qa = std::binary_search(qb.begin(), qb.end(), cert.coupling.qubit_a);
    bool b_qb = std::binary_search(qb.begin(), qb.end(), cert.coupling.qubit_b);
    if (!((a_qa && b_qb) || (a_qb && b_qa))) {
        *why = "coupling does not straddle the two children";
        return false;
    }
    if (!status_consistent(cert, why)) {
        return false;
    }
    return walk_consistency(*cert.child_a, why) && walk_consistency(*cert.child_b, why);
}

}  // namespace

VerifyReport verify(const Certificate& cert, VerifyEffort effort) {
    VerifyReport report;
    report.passed = true;

    std::string why;
    bool structure_ok = walk_consistency(cert, &why);
    add_check(report, "structure", structure_ok, structure_ok ? "" : why);

    std::vector<const Certificate*> leaves;
    std::vector<const Certificate*> joints;
    if (structure_ok) {
        collect_leaves(cert, leaves, joints);
    }

    bool hashes_ok = true;
    std::string hash_detail;
    for (const Certificate* leaf : leaves) {
        if (leaf->system->content_hash() != leaf->system_hash) {
            hashes_ok = false;
            hash_detail = "embedded system does not match its recorded hash";
            break;
        }
    }
    add_check(report, "content-hashes", hashes_ok, hash_detail);

    if (effort == VerifyEffort::none || !structure_ok || !hashes_ok) {
        return report;
    }

    // Re-derive leaf closures without trusting the stored records. Identical
    // leaf systems (frequent under representative sampling) are closed once.
    uint32_t spot_limit = effort == VerifyEffort::spot ? 5 : 16;
    size_t reclosed = 0, cached = 0, skipped = 0;
    bool closures_ok = true;
    std::string closure_detail;
    std::map<std::string, std::pair<uint64_t, bool>> seen;
    for (const Certificate* leaf : leaves) {
        uint32_t n = leaf->system->num_qubits();
        if (n > spot_limit || leaf->closure.truncated) {
            ++skipped;
            continue;
        }
        std::string key = leaf->system->canonical_text();
        auto hit = seen.find(key);
        std::pair<uint64_t, bool> outcome;
        if (hit != seen.end()) {
            outcome = hit->second;
            ++cached;
        } else {
            ClosureOptions options;
            options.force = n > 8;
            ClosureReport fresh = is_controllable(*leaf->system, options);
            outcome = {fresh.dimension, fresh.controllable};
            seen.emplace(std::move(key), outcome);
            ++reclosed;
        }
        if (outcome.first != leaf->closure.dimension ||
            outcome.second != leaf->closure.controllable) {
            closures_ok = false;
            closure_detail = "recomputed closure disagrees with the stored record";
            break;
        }
    }
    if (closures_ok) {
        closure_detail = "re-ran " + std::to_string(reclosed) + ", matched " +
                         std::to_string(cached) + " repeats, skipped " +
                         std::to_string(skipped);
    }
    add_check(report, "leaf-closures", closures_ok, closure_detail);

    // Replay sampled constructive derivations through every joint.
    uint32_t top = cert.qubits().empty() ? 0 : cert.qubits().back() + 1;
    uint64_t samples = effort == VerifyEffort::spot ? 20 : 50;
    bool joints_ok = true;
    std::string joint_detail;
    for (size_t jk = 0; jk < joints.size(); ++jk) {
        const Certificate* joint = joints[jk];
        auto component = joint->coupling.first_nonzero();
        if (!component) {
            continue;  // structure check already failed this
        }
        try {
            SkewOperator coupling_op = joint->coupling.to_operator(top);
            SkewOperator seed =
                isolate_coupling_term(coupling_op, joint->coupling.qubit_a,
                                      joint->coupling.qubit_b, component->first,
                                      component->second);
            Partition part = Partition::of(top, joint->child_a->qubits());
            AuditReport audit = sample_basis_audit(
                seed, part, samples, splitmix64(0x71a5u ^ static_cast<uint64_t>(jk)));
            if (!audit.all_passed()) {
                joints_ok = false;
                joint_detail = "derivation audit failed at joint " + std::to_string(jk);
                if (!audit.failure_notes.empty()) {
                    joint_detail += ": " + audit.failure_notes.front();
                }
                break;
            }
        } catch (const Error& e) {
            joints_ok = false;
            joint_detail = "derivation audit error at joint " + std::to_string(jk) + ": " +
                           e.what();
            break;
        }
    }
    if (!joints.empty()) {
        add_check(report, "joint-derivations", joints_ok, joint_detail);
    }

    // Exhaustive only: close the assembled joint system when it is small.
    if (effort == VerifyEffort::exhaustive && cert.total_qubits() <= 6) {
        ControlSystem joint_system = assemble(cert);
        ClosureReport joint_closure = is_controllable(joint_system);
        bool match = joint_closure.controllable == (cert.status == CertStatus::valid);
        add_check(report, "joint-closure", match,
                  "assembled dimension " + std::to_string(joint_closure.dimension) + " of " +
                      joint_closure.full_dimension.get_str());
    }

    return report;
}

// ---------------------------------------------------------------------------
// resource counting
// ---------------------------------------------------------------------------

namespace {

uint64_t static_couplings_of(const SkewOperator& drift) {
    std::set<std::pair<uint32_t, uint32_t>> pairs;
    for (const auto& [w, c] : drift.terms()) {
        std::vector<uint32_t> sup = w.support();
        if (sup.size() == 2) {
            pairs.emplace(sup[0], sup[1]);
        }
    }
    return pairs.size();
}

}  // namespace

ResourceCount resource_count(const Certificate& cert) {
    if (cert.kind == Certificate::Kind::direct) {
        return ResourceCount{cert.system->controls().size(),
                             static_couplings_of(cert.system->drift()), 0};
    }
    ResourceCount a = resource_count(*cert.child_a);
    ResourceCount b = resource_count(*cert.child_b);
    return ResourceCount{a.local_controls + b.local_controls,
                         a.static_couplings + b.static_couplings,
                         a.tunable_couplings + b.tunable_couplings + 1};
}

ResourceCount resource_count(const DeviceLayout& layout) {
    ResourceCount count;
    for (const ModuleSpec& m : layout.modules) {
        count.local_controls += m.controls().size();
        count.static_couplings += m.bonds().size();
    }
    for (const LinkSpec& l : layout.links) {
        if (!l.redundant) {
            ++count.tunable_couplings;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// file IO
// ---------------------------------------------------------------------------

void write_certificate(const Certificate& cert, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write certificate file: " + path);
    }
    out << cert.canonical_text();
    if (!out) {
        throw Error("failed writing certificate file: " + path);
    }
}

Certificate read_certificate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read certificate file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    json envelope;
    try {
        envelope = json::parse(buffer.str());
    } catch (const json::exception& e) {
        throw Error("malformed certificate file: " + std::string(e.what()));
    }
    try {
        if (envelope.at("format").get<std::string>() != "qontrol-certificate") {
            throw Error("not a certificate file: " + path);
        }
        if (envelope.at("version").get<int>() != 1) {
            throw Error("unsupported certificate version");
        }
        return Certificate::from_json(envelope.at("certificate"));
    } catch (const json::exception& e) {
        throw Error("malformed certificate file: " + std::string(e.what()));
    }
}

}  // namespace qontrol
