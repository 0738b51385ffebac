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

#include <string_view>

#include "skypattern/geometry.hpp"
#include "skypattern/pattern.hpp"

namespace skypattern
{

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact

struct LinkBudgetParams
{
    double tx_power = 0.0;               // dBm
    double frequency = 0.0;              // Hz
    double gs_boresight_azimuth = 0.0;   // deg, used by the two-pattern baseline only
};

LinkBudgetParams params_from_station(const GroundStation &station);

enum class GainSource
{
    CombinedLearned,
    AnechoicPair,
};

std::string_view gain_source_name(GainSource source) noexcept;

/// rsrp is always computed as tx_power - fspl + gain_applied.
struct PowerPrediction
{
    double rsrp = 0.0;         // dBm
    double fspl = 0.0;         // dB
    double gain_applied = 0.0; // dB
    GainSource gain_source = GainSource::CombinedLearned;
};

/// Free-space path loss in dB. Throws NonPositiveInput unless both inputs are > 0.
double fspl_db(double d3d_m, double frequency_hz);

/// Two-pattern prediction: UAV gain at (phi_u, theta_u) plus station gain at
/// (phi_g - boresight, theta_g).
PowerPrediction predict_baseline(const LinkAngles &angles, const LinkBudgetParams &params, const PatternGrid &g_uav,
                                 const PatternGrid &g_gs);

/// Single combined-pattern prediction at (phi_u, theta_u). Throws IncompleteGrid
/// if `g_com` still has missing cells.
PowerPrediction predict_combined(const LinkAngles &angles, const LinkBudgetParams &params, const PatternGrid &g_com);

/// Folds an anechoic pair into one combined grid on g_uav's layout, using the
/// fixed-yaw mapping phi_g = phi_u - 180 + yaw and theta_g = theta_u.
PatternGrid combine_anechoic_pair(const PatternGrid &g_uav, const PatternGrid &g_gs, double gs_boresight_azimuth,
                                  double uav_yaw = 0.0);

} // namespace skypattern
