// Copyright 2026 The tthpo Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tthpo/error.hpp"
#include "tthpo/harness.hpp"

namespace {

std::string quoted(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c == '\n' ? ' ' : c;
    }
    return out + '"';
}

int report_error(const std::string &kind, const std::string &message) {
    std::cerr << "error kind=" << kind << " message=" << quoted(message) << '\n';
    return kind == "Interrupted" ? 130 : 1;
}

int cmd_run(const std::string &config_path) {
    const tthpo::ExperimentConfig cfg = tthpo::load_config(config_path);
    tthpo::install_interrupt_handler();
    const tthpo::SuiteReport report = tthpo::run_suite(cfg);
    for (const auto &s : report.summaries) {
        std::cout << tthpo::to_string(report.method) << ' ' << tthpo::to_string(report.objective)
                  << " d=" << s.d << " n=" << s.n << " trials=" << s.trials
                  << " mean=" << s.mean_best << " min=" << s.min_best
                  << " median=" << s.median_best << " er=" << s.er << '\n';
    }
    const auto out = tthpo::resolve_output(cfg.output);
    if (!out.empty()) {
        std::cout << "wrote " << out.string() << '\n';
    }
    if (report.interrupted) {
        return report_error("Interrupted", "stopped after " + std::to_string(report.rows.size()) +
                                               " trials; completed rows were flushed");
    }
    return 0;
}

int cmd_compare(const std::string &a, const std::string &b, const std::string &output) {
    const auto c = tthpo::compare(tthpo::read_report_csv(a), tthpo::read_report_csv(b));
    if (output.empty()) {
        tthpo::write_comparison(c, std::cout);
    } else {
        std::ofstream os(output);
        if (!os) {
            tthpo::fail(tthpo::ErrorKind::IoError, "cannot write " + output);
        }
        tthpo::write_comparison(c, os);
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Tensor-train and grid-search hyperparameter optimization experiments"};
    app.require_subcommand(1);

    std::string config;
    auto *run = app.add_subcommand("run", "Run the trial suite described by a config file");
    run->add_option("--config", config, "INI experiment config")->required();

    std::string report_a;
    std::string report_b;
    std::string compare_out;
    auto *cmp = app.add_subcommand("compare", "Compare two suite CSV reports per dimension");
    cmp->add_option("report_a", report_a, "first report CSV")->required();
    cmp->add_option("report_b", report_b, "second report CSV")->required();
    cmp->add_option("--output", compare_out, "write the comparison here instead of stdout");

    auto *self = app.add_subcommand("selftest", "Run fast oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        app.exit(e);
        return report_error("Usage", e.what());
    }

    try {
        if (*run) {
            return cmd_run(config);
        }
        if (*cmp) {
            return cmd_compare(report_a, report_b, compare_out);
        }
        if (*self) {
            return tthpo::run_selftest(std::cout) ? 0 : 1;
        }
    } catch (const tthpo::Error &e) {
        return report_error(std::string(tthpo::to_string(e.kind())), e.what());
    } catch (const std::exception &e) {
        return report_error("Internal", e.what());
    }
    return 0;
}
