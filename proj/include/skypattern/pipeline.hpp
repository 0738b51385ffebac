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


#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "skypattern/eval.hpp"
#include "skypattern/geometry.hpp"
#include "skypattern/pattern.hpp"
#include "skypattern/sim.hpp"

// File-level workflows behind each CLI subcommand. Every run writes its
// outputs plus a manifest.json into `out_dir`.

namespace skypattern
{

namespace fs = std::filesystem;

struct SimulateOptions
{
    fs::path trajectory;
    fs::path station;
    std::optional<fs::path> truth_pattern; // used instead of `parametric` when set
    ParametricGain parametric;
    double noise_sigma_db = 0.0;
    std::uint64_t seed = 0;
    fs::path out_dir;
};

struct LearnOptions
{
    std::vector<fs::path> logs;
    fs::path station;
    double az_bin_deg = 5.0;
    double el_bin_deg = 2.0;
    std::uint64_t k_min = 5;
    double tol_db = kDefaultCompletionTolDb;
    int max_iters = kDefaultCompletionMaxIters;
    double orientation_tol_deg = kDefaultOrientationToleranceDeg;
    fs::path out_dir;
};

struct LearnResult
{
    PatternGrid raw;      // per-bin means, counts and variances
    PatternGrid observed; // after the k_min filter: the completion's fixed cells
    CompletionResult completion;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

struct CompleteOptions
{
    fs::path pattern;
    double tol_db = kDefaultCompletionTolDb;
    int max_iters = kDefaultCompletionMaxIters;
    fs::path out_dir;
};

struct EvaluateOptions
{
    fs::path log;
    fs::path station;
    fs::path grid;                       // learned, completed combined pattern
    bool baseline = false;               // also run the anechoic two-pattern predictor
    std::optional<fs::path> uav_pattern; // override the station config references
    std::optional<fs::path> gs_pattern;
    double el_bin_deg = kDefaultElevationBinDeg;
    double orientation_tol_deg = kDefaultOrientationToleranceDeg;
    std::string test_label = "test";
    std::string train_label = "train";
    fs::path out_dir;
};

struct EvaluateResult
{
    EvalReport combined;
    std::optional<EvalReport> baseline;
    std::optional<Comparison> comparison;
    std::size_t rejected = 0; // test samples dropped by orientation validation
};

struct ReportOptions
{
    std::vector<fs::path> reports;
    std::vector<fs::path> residuals;
    std::vector<std::string> names;
    fs::path out_dir;
};

std::vector<FlightSample> run_simulate(const SimulateOptions &options);
LearnResult run_learn(const LearnOptions &options);
CompletionResult run_complete(const CompleteOptions &options);
/// Residual files only.
EvaluateResult run_predict(const EvaluateOptions &options);
/// Residuals, reports, plots, and the comparison tables when both predictors run.
EvaluateResult run_evaluate(const EvaluateOptions &options);
void run_report(const ReportOptions &options);

} // namespace skypattern
