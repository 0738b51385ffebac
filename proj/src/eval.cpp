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


#include "skypattern/eval.hpp"

#include <algorithm>
#include <cmath>

#include "skypattern/error.hpp"
#include "skypattern/station.hpp"

namespace skypattern
{

Predictor Predictor::combined(const PatternGrid &g_com)
{
    return {GainSource::CombinedLearned, &g_com, nullptr};
}

Predictor Predictor::baseline(const PatternGrid &g_uav, const PatternGrid &g_gs)
{
    return {GainSource::AnechoicPair, &g_uav, &g_gs};
}

PowerPrediction Predictor::predict(const LinkAngles &angles, const LinkBudgetParams &params) const
{
    if (source == GainSource::CombinedLearned)
        return predict_combined(angles, params, *first);
    return predict_baseline(angles, params, *first, *second);
}

EvalReport evaluate(const std::vector<FlightSample> &test_samples, const GroundStation &station,
                    const Predictor &predictor, double el_bin_deg, double orientation_tol_deg)
{
    if (test_samples.empty())
        throw Error(ErrorCode::EmptySamples, "no test samples to evaluate");
    if (!predictor.first || (predictor.source == GainSource::AnechoicPair && !predictor.second))
        throw Error(ErrorCode::InvalidArgument, "predictor is missing a pattern grid");

    const LinkBudgetParams params = params_from_station(station);
    std::vector<ResidualRecord> residuals;
    residuals.reserve(test_samples.size());
    for (const FlightSample &s : test_samples)
    {
        const LinkAngles a = link_angles(s.position, s.attitude, station, orientation_tol_deg);
        const PowerPrediction p = predictor.predict(a, params);
        residuals.push_back({s.timestamp, a.d3d, a.phi_u, a.theta_u, s.rsrp, p.rsrp, std::abs(s.rsrp - p.rsrp),
                             std::string(gain_source_name(p.gain_source))});
    }
    return summarize(std::move(residuals), el_bin_deg);
}

EvalReport summarize(std::vector<ResidualRecord> residuals, double el_bin_deg)
{
    if (residuals.empty())
        throw Error(ErrorCode::EmptySamples, "no residuals to summarize");
    if (!(el_bin_deg > 0.0) || !std::isfinite(el_bin_deg))
        throw Error(ErrorCode::InvalidBinWidth, "elevation bin width must be > 0");

    EvalReport r;
    r.n_samples = residuals.size();
    const auto n = static_cast<double>(r.n_samples);

    double sum_abs = 0.0, sum_sq = 0.0;
    std::vector<double> errs;
    errs.reserve(residuals.size());
    for (const ResidualRecord &rec : residuals)
    {
        sum_abs += rec.abs_err_db;
        sum_sq += rec.abs_err_db * rec.abs_err_db;
        errs.push_back(rec.abs_err_db);
    }
    r.mae_db = sum_abs / n;
    r.rmse_db = std::sqrt(sum_sq / n);

    std::sort(errs.begin(), errs.end());
    for (std::size_t k = 0; k < errs.size(); ++k)
        if (k + 1 == errs.size() || errs[k + 1] != errs[k])
            r.error_cdf.push_back({errs[k], static_cast<double>(k + 1) / n});

    const auto n_bins = static_cast<std::size_t>(std::max(1.0, std::ceil(90.0 / el_bin_deg - 1e-9)));
    std::vector<double> bin_sum(n_bins, 0.0);
    std::vector<std::size_t> bin_count(n_bins, 0);
    for (const ResidualRecord &rec : residuals)
    {
        const double f = std::floor(rec.theta_u_deg / el_bin_deg);
        const std::size_t b = f < 0.0 ? 0 : std::min(static_cast<std::size_t>(f), n_bins - 1);
        bin_sum[b] += rec.abs_err_db;
        ++bin_count[b];
    }
    for (std::size_t b = 0; b < n_bins; ++b)
    {
        ElevationBin bin;
        bin.el_lo_deg = static_cast<double>(b) * el_bin_deg;
        bin.el_hi_deg = std::min(90.0, static_cast<double>(b + 1) * el_bin_deg);
        if (bin_count[b] > 0)
            bin.mae_db = bin_sum[b] / static_cast<double>(bin_count[b]);
        bin.density = static_cast<double>(bin_count[b]) / n;
        r.per_elevation.push_back(bin);
    }

    r.residuals = std::move(residuals);
    return r;
}

const char *winner_name(Winner w) noexcept
{
    switch (w)
    {
    case Winner::A:
        return "a";
    case Winner::B:
        return "b";
    case Winner::Tie:
        return "tie";
    case Winner::None:
        break;
    }
    return "none";
}

namespace
{

ComparisonRow make_row(std::string metric, std::optional<double> a, std::optional<double> b)
{
    ComparisonRow row;
    row.metric = std::move(metric);
    row.a = a;
    row.b = b;
    if (a && b)
    {
        row.delta = *a - *b;
        row.winner = *row.delta < 0.0 ? Winner::A : *row.delta > 0.0 ? Winner::B : Winner::Tie;
    }
    return row;
}

} // namespace

Comparison compare(const EvalReport &a, const EvalReport &b, std::string label_a, std::string label_b)
{
    if (a.n_samples != b.n_samples)
        throw Error(ErrorCode::MismatchedTestSets, "reports cover different numbers of test samples (" +
                                                       std::to_string(a.n_samples) + " vs " +
                                                       std::to_string(b.n_samples) + ")");
    if (a.per_elevation.size() != b.per_elevation.size())
        throw Error(ErrorCode::MismatchedTestSets, "reports use different elevation binning");
    for (std::size_t k = 0; k < a.per_elevation.size(); ++k)
        if (a.per_elevation[k].el_lo_deg != b.per_elevation[k].el_lo_deg ||
            a.per_elevation[k].el_hi_deg != b.per_elevation[k].el_hi_deg)
            throw Error(ErrorCode::MismatchedTestSets, "reports use different elevation binning");

    Comparison c{std::move(label_a), std::move(label_b), {}};
    c.rows.push_back(make_row("mae_db", a.mae_db, b.mae_db));
    c.rows.push_back(make_row("rmse_db", a.rmse_db, b.rmse_db));
    for (std::size_t k = 0; k < a.per_elevation.size(); ++k)
    {
        ComparisonRow row = make_row("elevation_mae_db", a.per_elevation[k].mae_db, b.per_elevation[k].mae_db);
        row.el_lo_deg = a.per_elevation[k].el_lo_deg;
        row.el_hi_deg = a.per_elevation[k].el_hi_deg;
        c.rows.push_back(std::move(row));
    }
    return c;
}

} // namespace skypattern
