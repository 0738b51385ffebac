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


#include "skypattern/link_budget.hpp"

#include <cmath>
#include <numbers>

#include "skypattern/error.hpp"
#include "skypattern/station.hpp"

namespace skypattern
{

namespace
{

const double kFsplConstant = 20.0 * std::log10(4.0 * std::numbers::pi / kSpeedOfLight);

PowerPrediction make_prediction(const LinkAngles &angles, const LinkBudgetParams &params, double gain,
                                GainSource source)
{
    PowerPrediction p;
    p.fspl = fspl_db(angles.d3d, params.frequency);
    p.gain_applied = gain;
    p.rsrp = params.tx_power - p.fspl + p.gain_applied;
    p.gain_source = source;
    return p;
}

} // namespace

LinkBudgetParams params_from_station(const GroundStation &station)
{
    return {station.tx_power, station.frequency, station.boresight_azimuth};
}

std::string_view gain_source_name(GainSource source) noexcept
{
    return source == GainSource::CombinedLearned ? "combined-learned" : "anechoic-pair";
}

double fspl_db(double d3d_m, double frequency_hz)
{
    if (!(d3d_m > 0.0) || !(frequency_hz > 0.0))
        throw Error(ErrorCode::NonPositiveInput, "FSPL needs positive distance and frequency");
    return 20.0 * std::log10(d3d_m) + 20.0 * std::log10(frequency_hz) + kFsplConstant;
}

PowerPrediction predict_baseline(const LinkAngles &angles, const LinkBudgetParams &params, const PatternGrid &g_uav,
                                 const PatternGrid &g_gs)
{
    const double gain_uav = g_uav.interpolate(angles.phi_u, angles.theta_u);
    const double gain_gs = g_gs.interpolate(wrap_360(angles.phi_g - params.gs_boresight_azimuth), angles.theta_g);
    return make_prediction(angles, params, gain_uav + gain_gs, GainSource::AnechoicPair);
}

PowerPrediction predict_combined(const LinkAngles &angles, const LinkBudgetParams &params, const PatternGrid &g_com)
{
    if (!g_com.is_complete())
        throw Error(ErrorCode::IncompleteGrid,
                    "combined pattern has missing cells; run complete on it before predicting");
    return make_prediction(angles, params, g_com.interpolate(angles.phi_u, angles.theta_u),
                           GainSource::CombinedLearned);
}

PatternGrid combine_anechoic_pair(const PatternGrid &g_uav, const PatternGrid &g_gs, double gs_boresight_azimuth,
                                  double uav_yaw)
{
    PatternGrid out(g_uav.az_bin_deg(), g_uav.el_bin_deg());
    out.metadata = g_uav.metadata;
    out.metadata.label = g_uav.metadata.label + "+" + g_gs.metadata.label;
    for (std::size_t i = 0; i < out.n_az(); ++i)
    {
        const double phi_u = out.az_center(i);
        const double phi_gs = wrap_360(phi_u + 180.0 + uav_yaw - gs_boresight_azimuth);
        for (std::size_t j = 0; j < out.n_el(); ++j)
        {
            const double theta = out.el_center(j);
            out.set_gain(i, j, g_uav.interpolate(phi_u, theta) + g_gs.interpolate(phi_gs, theta));
            out.set_count(i, j, 1);
        }
    }
    return out;
}

} // namespace skypattern
