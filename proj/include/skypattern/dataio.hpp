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
#include <string>
#include <string_view>
#include <vector>

#include "skypattern/eval.hpp"
#include "skypattern/pattern.hpp"
#include "skypattern/station.hpp"

namespace skypattern
{

inline constexpr std::string_view kFlightLogHeader = "timestamp_s,lat_deg,lon_deg,alt_m,yaw_deg,pitch_deg,roll_deg,rsrp_dbm";
inline constexpr std::string_view kPatternHeader = "az_deg,el_deg,gain_db,count,variance_db2";
inline constexpr std::string_view kResidualHeader =
    "timestamp_s,d3d_m,phi_u_deg,theta_u_deg,rsrp_meas_dbm,rsrp_pred_dbm,abs_err_db,predictor";

struct LogRejection
{
    std::size_t line = 0; // 1-based
    std::string reason;
};

struct FlightLog
{
    std::vector<FlightSample> samples;
    std::vector<LogRejection> rejections;
    std::vector<std::string> warnings;
    double alt_offset_m = 0.0;
};

/// Parses a flight log. Malformed rows are rejected with their line number;
/// only a missing header or an empty file is fatal.
FlightLog parse_flight_log(std::string_view text, const std::string &source = "<memory>");
FlightLog read_flight_log(const std::filesystem::path &path);
std::string format_flight_log(const std::vector<FlightSample> &samples);
void write_flight_log(const std::vector<FlightSample> &samples, const std::filesystem::path &path);

/// Relative pattern paths are resolved against `base_dir`.
GroundStation parse_station_config(std::string_view json_text, const std::filesystem::path &base_dir = {});
GroundStation read_station_config(const std::filesystem::path &path);
std::string format_station_config(const GroundStation &station);

PatternGrid parse_pattern(std::string_view text, const std::string &source = "<memory>");
PatternGrid read_pattern(const std::filesystem::path &path);
std::string format_pattern(const PatternGrid &grid);
void write_pattern(const PatternGrid &grid, const std::filesystem::path &path);

std::vector<ResidualRecord> parse_residuals(std::string_view text, const std::string &source = "<memory>");
std::vector<ResidualRecord> read_residuals(const std::filesystem::path &path);
std::string format_residuals(const std::vector<ResidualRecord> &residuals);
void write_residuals(const std::vector<ResidualRecord> &residuals, const std::filesystem::path &path);

/// Report JSON carries the summary only; residuals travel in their own file.
EvalReport parse_report(std::string_view json_text, const std::string &source = "<memory>");
EvalReport read_report(const std::filesystem::path &path);
std::string format_report(const EvalReport &report);
void write_report(const EvalReport &report, const std::filesystem::path &path);

std::string format_comparison(const Comparison &comparison);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path &path);
/// Writes via a sibling temp file and rename so readers never see partial output.
void write_text_atomic(const std::filesystem::path &path, std::string_view content);

} // namespace skypattern
