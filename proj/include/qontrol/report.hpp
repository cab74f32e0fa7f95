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

#ifndef QONTROL_REPORT_HPP
#define QONTROL_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qontrol/certify.hpp"
#include "qontrol/closure.hpp"

namespace qontrol {

inline constexpr const char* kToolName = "qontrol";
inline constexpr const char* kToolVersion = "1.0.0";

// Exit code contract, shared by every subcommand.
inline constexpr int kExitOk = 0;             // controllable / valid / audit passed
inline constexpr int kExitNegative = 1;       // proven not controllable / invalid / failed
inline constexpr int kExitIndeterminate = 2;  // truncated or guard-refused
inline constexpr int kExitInputError = 3;     // unreadable/malformed input or bad request

/// One closure row in a report: a module leaf, or the whole device for
/// direct/dim runs.
struct ModuleResult {
    std::string id;
    std::string template_name;  // empty for whole-device rows
    uint64_t seed = 0;
    uint32_t qubits = 0;
    uint64_t dimension = 0;
    std::string full_dimension;  // decimal, exact
    bool controllable = false;
    bool truncated = false;
    std::string reason;
    bool cached = false;  // closure reused via content hash
    std::string hash;     // 16-char hex content hash
    uint32_t max_depth = 0;
    double seconds = 0.0;  // human format only
};

struct LinkAuditResult {
    std::string label;
    uint64_t samples = 0;
    uint64_t passes = 0;
    uint64_t failures = 0;
    std::vector<std::string> failure_notes;
};

/// Deterministic machine-facing record of one CLI run. The exit code is a
/// total function of the fields (exit_code_of); wall-clock timing appears in
/// the human rendering only, never in the machine rendering.
struct RunReport {
    std::string command;  // check | verify | audit | dim
    std::string input_path;
    std::string mode;        // direct | compose (check only)
    std::string arithmetic;  // exact | float
    std::vector<uint64_t> seeds;
    std::vector<ModuleResult> modules;
    std::optional<std::string> composite_status;
    std::string composite_reason;
    std::optional<ResourceCount> resources;
    std::vector<uint64_t> depth_profile;  // dim only
    std::vector<LinkAuditResult> audits;
    std::optional<bool> verify_passed;
    std::vector<VerifyCheck> verify_checks;
    std::string certificate_path;  // where check wrote the certificate, if asked
    std::vector<std::string> notes;
    std::string error;  // nonempty => input error
    double total_seconds = 0.0;
};

int exit_code_of(const RunReport& report);
std::string render_text(const RunReport& report);
nlohmann::json render_machine(const RunReport& report);

struct CheckOptions {
    std::string layout_path;
    std::string mode = "auto";  // auto | direct | compose
    uint64_t seed = 1;
    uint32_t seed_count = 1;  // genericity replication: seeds seed..seed+k-1
    ArithMode arithmetic = ArithMode::exact;
    double float_tolerance = 1e-10;
    uint32_t max_depth = 0;
    bool force = false;
    std::string certificate_out;  // write the certificate here when nonempty
};

struct VerifyOptions {
    std::string certificate_path;
    VerifyEffort effort = VerifyEffort::spot;
};

struct AuditOptions {
    std::string layout_path;
    uint64_t samples = 25;
    uint64_t seed = 1;
};

struct DimOptions {
    std::string layout_path;
    uint64_t seed = 1;
    ArithMode arithmetic = ArithMode::exact;
    double float_tolerance = 1e-10;
    uint32_t max_depth = 0;
    bool force = false;
};

RunReport run_check(const CheckOptions& options);
RunReport run_verify(const VerifyOptions& options);
RunReport run_audit(const AuditOptions& options);
RunReport run_dim(const DimOptions& options);

}  // namespace qontrol

#endif
