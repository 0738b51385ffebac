// SPDX-License-Identifier: Apache-2.0
//
// skypattern: combined UAV / ground-station radiation pattern toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


// skypattern command-line front end: simulate, learn, complete, predict,
// evaluate and report.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "skypattern/error.hpp"
#include "skypattern/hash.hpp"
#include "skypattern/pipeline.hpp"

namespace
{

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

void configure_logging()
{
    auto logger = spdlog::stderr_logger_st("skypattern");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);

    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char *env = std::getenv("SKYPATTERN_LOG"))
        level = spdlog::level::from_str(env);
    spdlog::set_level(level);
}

std::string one_line(std::string s)
{
    for (char &c : s)
        if (c == '\n' || c == '\r')
            c = ' ';
    return s;
}

void add_evaluate_flags(CLI::App *cmd, skypattern::EvaluateOptions &o)
{
    cmd->add_option("--log", o.log, "Test flight log (CSV)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--station", o.station, "Ground-station config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--grid", o.grid, "Completed combined pattern (CSV)")->required()->check(CLI::ExistingFile);
    cmd->add_flag("--baseline", o.baseline, "Also predict with the anechoic pattern pair");
    cmd->add_option("--uav-pattern", o.uav_pattern, "Anechoic UAV pattern, overrides the station config")
        ->check(CLI::ExistingFile);
    cmd->add_option("--gs-pattern", o.gs_pattern, "Anechoic station pattern, overrides the station config")
        ->check(CLI::ExistingFile);
    cmd->add_option("--el-bin-deg", o.el_bin_deg, "Elevation bin width of the error profile")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--orientation-tol-deg", o.orientation_tol_deg, "Attitude tolerance for the fixed-orientation check")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--test-label", o.test_label, "Test flight label for the summary table")->capture_default_str();
    cmd->add_option("--train-label", o.train_label, "Training flight label for the summary table")->capture_default_str();
    cmd->add_option("--out-dir", o.out_dir, "Output directory")->required();
}

} // namespace

int main(int argc, char **argv)
{
    configure_logging();

    CLI::App app{"Learn and apply the combined UAV / ground-station radiation pattern"};
    app.set_version_flag("--version", std::string(skypattern::kToolVersion));
    app.require_subcommand(1);

    skypattern::SimulateOptions sim;
    auto *simulate = app.add_subcommand("simulate", "Synthesise a flight log from a known pattern");
    simulate->add_option("--trajectory", sim.trajectory, "Trajectory spec (JSON)")->required()->check(CLI::ExistingFile);
    simulate->add_option("--station", sim.station, "Ground-station config (JSON)")->required()->check(CLI::ExistingFile);
    simulate->add_option("--truth-pattern", sim.truth_pattern, "Truth pattern (CSV, complete)")->check(CLI::ExistingFile);
    simulate->add_option("--truth-g0-db", sim.parametric.g0_db, "Parametric truth offset")->capture_default_str();
    simulate->add_option("--truth-g1-db", sim.parametric.g1_db, "Parametric truth elevation gain")->capture_default_str();
    simulate->add_option("--truth-exponent", sim.parametric.exponent, "Parametric truth exponent")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--noise-sigma-db", sim.noise_sigma_db, "Gaussian RSRP noise")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
    simulate->add_option("--out-dir", sim.out_dir, "Output directory")->required();

    skypattern::LearnOptions learn;
    auto *learn_cmd = app.add_subcommand("learn", "Estimate and complete the combined pattern from flight logs");
    learn_cmd->add_option("--log", learn.logs, "Training flight log (CSV); repeatable")
        ->required()
        ->check(CLI::ExistingFile);
    learn_cmd->add_option("--station", learn.station, "Ground-station config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    learn_cmd->add_option("--az-bin-deg", learn.az_bin_deg, "Azimuth bin width")->capture_default_str();
    learn_cmd->add_option("--el-bin-deg", learn.el_bin_deg, "Elevation bin width")->capture_default_str();
    learn_cmd->add_option("--k-min", learn.k_min, "Minimum samples for a bin to count as observed")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    learn_cmd->add_option("--tol-db", learn.tol_db, "Completion stopping tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    learn_cmd->add_option("--max-iters", learn.max_iters, "Completion sweep limit")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    learn_cmd->add_option("--orientation-tol-deg", learn.orientation_tol_deg, "Attitude tolerance")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    learn_cmd->add_option("--out-dir", learn.out_dir, "Output directory")->required();

    skypattern::CompleteOptions complete;
    auto *complete_cmd = app.add_subcommand("complete", "Fill missing cells of a pattern by Laplace smoothing");
    complete_cmd->add_option("--pattern", complete.pattern, "Pattern (CSV)")->required()->check(CLI::ExistingFile);
    complete_cmd->add_option("--tol-db", complete.tol_db, "Stopping tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    complete_cmd->add_option("--max-iters", complete.max_iters, "Sweep limit")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    complete_cmd->add_option("--out-dir", complete.out_dir, "Output directory")->required();

    skypattern::EvaluateOptions predict;
    auto *predict_cmd = app.add_subcommand("predict", "Predict RSRP on a test flight and write residuals");
    add_evaluate_flags(predict_cmd, predict);

    skypattern::EvaluateOptions evaluate;
    auto *evaluate_cmd = app.add_subcommand("evaluate", "Predict, score and plot a test flight");
    add_evaluate_flags(evaluate_cmd, evaluate);

    skypattern::ReportOptions report;
    auto *report_cmd = app.add_subcommand("report", "Re-render plots and comparison from saved reports");
    report_cmd->add_option("--report", report.reports, "Report JSON; repeatable")->required()->check(CLI::ExistingFile);
    report_cmd->add_option("--residuals", report.residuals, "Residual CSV matching each --report")
        ->required()
        ->check(CLI::ExistingFile);
    report_cmd->add_option("--name", report.names, "Series name for each --report");
    report_cmd->add_option("--out-dir", report.out_dir, "Output directory")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try
    {
        if (*simulate)
            skypattern::run_simulate(sim);
        else if (*learn_cmd)
            skypattern::run_learn(learn);
        else if (*complete_cmd)
            skypattern::run_complete(complete);
        else if (*predict_cmd)
            skypattern::run_predict(predict);
        else if (*evaluate_cmd)
            skypattern::run_evaluate(evaluate);
        else if (*report_cmd)
            skypattern::run_report(report);
    }
    catch (const skypattern::Error &e)
    {
        std::cerr << "error: " << skypattern::error_code_name(e.code()) << ": " << one_line(e.what()) << "\n";
        return kExitRuntime;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: Internal: " << one_line(e.what()) << "\n";
        return kExitRuntime;
    }
    return 0;
}
