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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "skypattern/link_budget.hpp"
#include "skypattern/pattern.hpp"

namespace skypattern
{

struct GroundStation;
struct FlightSample;

/// One row of the residual file.
struct ResidualRecord
{
    double timestamp_s = 0.0;
    double d3d_m = 0.0;
    double phi_u_deg = 0.0;
    double theta_u_deg = 0.0;
    double rsrp_meas_dbm = 0.0;
    double rsrp_pred_dbm = 0.0;
    double abs_err_db = 0.0;
    std::string predictor;

    bool operator==(const ResidualRecord &) const = default;
};

struct CdfPoint
{
    double abs_err_db = 0.0;
    double cum_prob = 0.0;

    bool operator==(const CdfPoint &) const = default;
};

struct ElevationBin
{
    double el_lo_deg = 0.0;
    double el_hi_deg = 0.0;
    std::optional<double> mae_db; // empty when no sample fell in the bin
    double density = 0.0;         // share of all samples

    bool operator==(const ElevationBin &) const = default;
};

struct EvalReport
{
    double mae_db = 0.0;
    double rmse_db = 0.0;
    std::size_t n_samples = 0;
    std::vector<CdfPoint> error_cdf;
    std::vector<ElevationBin> per_elevation;
    std::vector<ResidualRecord> residuals; // stored in the residual file, not the report JSON

    bool operator==(const EvalReport &) const = default;
};

/// Predictor under evaluation. Grids are borrowed for the duration of the call.
struct Predictor
{
    static Predictor combined(const PatternGrid &g_com);
    static Predictor baseline(const PatternGrid &g_uav, const PatternGrid &g_gs);

    GainSource source = GainSource::CombinedLearned;
    const PatternGrid *first = nullptr;
    const PatternGrid *second = nullptr;

    PowerPrediction predict(const LinkAngles &angles, const LinkBudgetParams &params) const;
};

inline constexpr double kDefaultElevationBinDeg = 5.0;

/// Predicts every test sample and summarises the absolute errors.
///
/// Elevation bins of width `el_bin_deg` tile [0, 90]; samples outside that
/// range are counted in the nearest end bin so every sample is represented.
EvalReport evaluate(const std::vector<FlightSample> &test_samples, const GroundStation &station,
                    const Predictor &predictor, double el_bin_deg = kDefaultElevationBinDeg,
                    double orientation_tol_deg = kDefaultOrientationToleranceDeg);

/// Rebuilds the summary statistics of a report from its residuals.
EvalReport summarize(std::vector<ResidualRecord> residuals, double el_bin_deg = kDefaultElevationBinDeg);

enum class Winner
{
    A,
    B,
    Tie,
    None, // one side has no value
};

const char *winner_name(Winner w) noexcept;

struct ComparisonRow
{
    std::string metric; // "mae_db", "rmse_db" or "elevation_mae_db"
    double el_lo_deg = 0.0;
    double el_hi_deg = 0.0;
    std::optional<double> a;
    std::optional<double> b;
    std::optional<double> delta; // a - b
    Winner winner = Winner::None;
};

struct Comparison
{
    std::string label_a;
    std::string label_b;
    std::vector<ComparisonRow> rows;
};

/// Paired deltas (a - b) per metric and per elevation bin; lower error wins.
Comparison compare(const EvalReport &a, const EvalReport &b, std::string label_a = "a", std::string label_b = "b");

/// Writes scatter.svg, error_cdf.svg and elevation_mae.svg into `out_dir`, each
/// with a backing CSV. `provenance` lines are embedded as SVG comments.
struct NamedReport
{
    std::string name;
    const EvalReport *report = nullptr;
};

std::vector<std::filesystem::path> render_plots(const std::vector<NamedReport> &reports,
                                                const std::filesystem::path &out_dir,
                                                const std::vector<std::string> &provenance = {});

} // namespace skypattern
