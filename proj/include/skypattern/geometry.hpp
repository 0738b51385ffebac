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

#include <string>
#include <vector>

namespace skypattern
{

struct GroundStation;
struct FlightSample;

/// WGS-84 geodetic position. Altitude is meters above the ellipsoid.
struct GeodeticPosition
{
    double latitude = 0.0;  // deg, [-90, 90]
    double longitude = 0.0; // deg, [-180, 180)
    double altitude = 0.0;  // m

    bool is_valid() const noexcept;
};

/// UAV attitude. Yaw is a compass heading: 0 = fuselage toward true north, clockwise.
struct Attitude
{
    double yaw = 0.0;   // deg, [0, 360)
    double pitch = 0.0; // deg, [-90, 90]
    double roll = 0.0;  // deg, [-180, 180)

    bool is_valid() const noexcept;
};

/// Local east/north/up displacement in meters.
struct EnuVector
{
    double east = 0.0;
    double north = 0.0;
    double up = 0.0;

    double norm() const noexcept;
};

/// Angles of one UAV-to-station link, all in degrees, plus the 3D antenna separation.
///
/// Azimuths are compass bearings in [0, 360). Elevations are referenced to the
/// local horizontal: 0 = horizon, +90 = zenith.
struct LinkAngles
{
    double phi_g = 0.0;   // bearing of the UAV seen from the station
    double theta_g = 0.0; // elevation of the UAV above the station horizon
    double phi_u = 0.0;   // bearing of the station in the UAV body frame
    double theta_u = 0.0; // elevation of the station in the UAV frame
    double d3d = 0.0;     // m
};

inline constexpr double kDefaultOrientationToleranceDeg = 5.0;

/// Maps any finite angle into [0, 360).
double wrap_360(double deg) noexcept;

/// Smallest absolute difference between two headings, in [0, 180].
double circular_distance_deg(double a, double b) noexcept;

/// WGS-84 displacement of `target` from `origin` expressed in the ENU frame at `origin`.
EnuVector geodetic_to_enu(const GeodeticPosition &target, const GeodeticPosition &origin);

/// Inverse of geodetic_to_enu.
GeodeticPosition enu_to_geodetic(const EnuVector &enu, const GeodeticPosition &origin);

/// Computes the link angles of a UAV at `uav` with attitude `attitude` relative to `station`.
///
/// Only the fixed-orientation regime is supported: when |pitch| or |roll| exceeds
/// `orientation_tol_deg` an OrientationOutOfScope error is raised instead of rotating the
/// UAV frame. Throws ZeroDistance when the antennas are closer than 1 mm.
LinkAngles link_angles(const GeodeticPosition &uav, const Attitude &attitude, const GroundStation &station,
                       double orientation_tol_deg = kDefaultOrientationToleranceDeg);

enum class OrientationReject
{
    PitchExceedsTolerance,
    RollExceedsTolerance,
    YawDeviatesFromExpected,
};

const char *orientation_reject_name(OrientationReject reason) noexcept;

struct RejectedSample
{
    std::size_t index = 0; // position in the input sequence
    std::vector<OrientationReject> reasons;
};

struct OrientationPartition
{
    std::vector<FlightSample> accepted;
    std::vector<RejectedSample> rejected;
};

/// Splits samples into those flown in the fixed attitude and those that are not.
OrientationPartition validate_fixed_orientation(const std::vector<FlightSample> &samples, double expected_yaw,
                                                double tolerance);

} // namespace skypattern
