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

#include "skypattern/geometry.hpp"

namespace skypattern
{

/// Ground-station configuration. Gains and powers are in dB / dBm.
struct GroundStation
{
    GeodeticPosition position; // antenna phase center
    double tx_power = 0.0;     // dBm, effective radiated reference
    double frequency = 0.0;    // Hz
    double boresight_azimuth = 0.0;
    double expected_uav_yaw = 0.0;
    std::optional<std::filesystem::path> anechoic_gs_pattern;
    std::optional<std::filesystem::path> anechoic_uav_pattern;
    std::string label;
};

/// One pre-joined telemetry + radio measurement.
struct FlightSample
{
    double timestamp = 0.0; // s
    GeodeticPosition position;
    Attitude attitude;
    double rsrp = 0.0; // dBm
};

} // namespace skypattern
