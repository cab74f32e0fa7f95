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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qontrol/report.hpp"

namespace {

using qontrol::RunReport;

int finish(const RunReport& report, const std::string& format) {
    if (format == "machine") {
        std::cout << qontrol::render_machine(report).dump(2) << "\n";
    } else {
        std::cout << qontrol::render_text(report);
    }
    return qontrol::exit_code_of(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decide controllability of modular qubit arrays"};
    app.require_subcommand(1);

    std::string format = "text";
    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "machine"}))
            ->capture_default_str();
    };
    auto arith_option = [](CLI::App* cmd, qontrol::ArithMode* target) {
        cmd->add_option_function<std::string>(
               "--arith",
               [target](const std::string& v) {
                   *target = v == "float" ? qontrol::ArithMode::floating
                                          : qontrol::ArithMode::exact;
               },
               "closure arithmetic")
            ->check(CLI::IsMember({"exact", "float"}))
            ->default_str("exact");
    };

    qontrol::CheckOptions check_opts;
    CLI::App* check = app.add_subcommand("check", "decide controllability of a layout");
    check->add_option("layout", check_opts.layout_path, "layout file")->required();
    check->add_option("--mode", check_opts.mode, "direct | compose | auto")
        ->check(CLI::IsMember({"auto", "direct", "compose"}))
        ->capture_default_str();
    check->add_option("--seed", check_opts.seed, "parameter seed")->capture_default_str();
    check
        ->add_option("--seeds", check_opts.seed_count,
                     "run this many consecutive seeds for genericity")
        ->capture_default_str();
    arith_option(check, &check_opts.arithmetic);
    check->add_option("--tol", check_opts.float_tolerance, "float-mode acceptance tolerance")
        ->capture_default_str();
    check->add_option("--max-depth", check_opts.max_depth, "bracket depth cap (0 = none)")
        ->capture_default_str();
    check->add_flag("--force", check_opts.force, "override the large-register guard");
    check->add_option("--cert-out", check_opts.certificate_out,
                      "write the composite certificate here");
    add_format(check);

    qontrol::VerifyOptions verify_opts;
    std::string effort = "spot";
    CLI::App* verify = app.add_subcommand("verify", "re-check a certificate");
    verify->add_option("certificate", verify_opts.certificate_path, "certificate file")
        ->required();
    verify->add_option("--effort", effort, "verification depth")
        ->check(CLI::IsMember({"none", "spot", "exhaustive"}))
        ->capture_default_str();
    add_format(verify);

    qontrol::AuditOptions audit_opts;
    CLI::App* audit = app.add_subcommand("audit", "replay link derivations of a layout");
    audit->add_option("layout", audit_opts.layout_path, "layout file")->required();
    audit->add_option("--samples", audit_opts.samples, "samples per link")
        ->capture_default_str();
    audit->add_option("--seed", audit_opts.seed, "sampling seed")->capture_default_str();
    add_format(audit);

    qontrol::DimOptions dim_opts;
    CLI::App* dim = app.add_subcommand("dim", "closure dimension and depth profile");
    dim->add_option("layout", dim_opts.layout_path, "layout file")->required();
    dim->add_option("--seed", dim_opts.seed, "parameter seed")->capture_default_str();
    arith_option(dim, &dim_opts.arithmetic);
    dim->add_option("--tol", dim_opts.float_tolerance, "float-mode acceptance tolerance")
        ->capture_default_str();
    dim->add_option("--max-depth", dim_opts.max_depth, "bracket depth cap (0 = none)")
        ->capture_default_str();
    dim->add_flag("--force", dim_opts.force, "override the large-register guard");
    add_format(dim);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : qontrol::kExitInputError;
    }

    try {
        if (check->parsed()) {
            return finish(qontrol::run_check(check_opts), format);
        }
        if (verify->parsed()) {
            verify_opts.effort = effort == "none"  ? qontrol::VerifyEffort::none
                                 : effort == "spot" ? qontrol::VerifyEffort::spot
                                                    : qontrol::VerifyEffort::exhaustive;
            return finish(qontrol::run_verify(verify_opts), format);
        }
        if (audit->parsed()) {
            return finish(qontrol::run_audit(audit_opts), format);
        }
        if (dim->parsed()) {
            return finish(qontrol::run_dim(dim_opts), format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qontrol::kExitInputError;
    }
    return qontrol::kExitInputError;
}
