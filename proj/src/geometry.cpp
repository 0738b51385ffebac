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


#include "skypattern/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "skypattern/error.hpp"
#include "skypattern/station.hpp"

namespace skypattern
{

namespace
{

// WGS-84
constexpr double kSemiMajor = 6378137.0;
constexpr double kFlattening = 1.0 / 298.257223563;
constexpr double kE2 = kFlattening * (2.0 - kFlattening);

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

constexpr double kMinLinkDistance = 1e-3; // m
constexpr double kPoleToleranceDeg = 1e-9;

void require_valid(const GeodeticPosition &p, const char *what)
{
    if (!p.is_valid())
    {
        std::ostringstream os;
        os.precision(17);
        os << what << " position out of range (lat=" << p.latitude << ", lon=" << p.longitude
           << ", alt=" << p.altitude << ")";
        throw Error(ErrorCode::ValueOutOfRange, os.str());
    }
}

struct Ecef
{
    double x, y, z;
};

Ecef to_ecef(const GeodeticPosition &p)
{
    const double lat = p.latitude * kDegToRad;
    const double lon = p.longitude * kDegToRad;
    const double s = std::sin(lat);
    const double n = kSemiMajor / std::sqrt(1.0 - kE2 * s * s);
    const double r = (n + p.altitude) * std::cos(lat);
    return {r * std::cos(lon), r * std::sin(lon), (n * (1.0 - kE2) + p.altitude) * s};
}

GeodeticPosition from_ecef(const Ecef &e)
{
    const double p = std::hypot(e.x, e.y);
    double lat = std::atan2(e.z, p * (1.0 - kE2));
    for (int it = 0; it < 16; ++it)
    {
        const double s = std::sin(lat);
        const double n = kSemiMajor / std::sqrt(1.0 - kE2 * s * s);
        const double next = std::atan2(e.z + kE2 * n * s, p);
        const bool done = std::abs(next - lat) < 1e-15;
        lat = next;
        if (done)
            break;
    }
    const double s = std::sin(lat);
    const double h = p * std::cos(lat) + e.z * s - kSemiMajor * std::sqrt(1.0 - kE2 * s * s);

    double lon = std::atan2(e.y, e.x) * kRadToDeg;
    if (lon >= 180.0)
        lon -= 360.0;
    return {lat * kRadToDeg, lon, h};
}

} // namespace

bool GeodeticPosition::is_valid() const noexcept
{
    return std::isfinite(latitude) && std::isfinite(longitude) && std::isfinite(altitude) && latitude >= -90.0 &&
           latitude <= 90.0 && longitude >= -180.0 && longitude < 180.0;
}

bool Attitude::is_valid() const noexcept
{
    return std::isfinite(yaw) && std::isfinite(pitch) && std::isfinite(roll) && yaw >= 0.0 && yaw < 360.0 &&
           pitch >= -90.0 && pitch <= 90.0 && roll >= -180.0 && roll < 180.0;
}

double EnuVector::norm() const noexcept
{
    return std::sqrt(east * east + north * north + up * up);
}

double wrap_360(double deg) noexcept
{
    double r = std::fmod(deg, 360.0);
    if (r < 0.0)
        r += 360.0;
    if (r >= 360.0 || r == 0.0) // -tiny + 360 rounds to 360; also folds -0.0
        r = 0.0;
    return r;
}

double circular_distance_deg(double a, double b) noexcept
{
    const double d = wrap_360(a - b);
    return d > 180.0 ? 360.0 - d : d;
}

// The displacement is assembled from differences of sines/cosines and radii
// rather than by subtracting two ECEF vectors of ~6.4e6 m magnitude, so short
// baselines keep full relative precision.
EnuVector geodetic_to_enu(const GeodeticPosition &target, const GeodeticPosition &origin)
{
    require_valid(target, "target");
    require_valid(origin, "origin");

    const double lat_t = target.latitude * kDegToRad;
    const double lat_o = origin.latitude * kDegToRad;
    const double dlon = (target.longitude - origin.longitude) * kDegToRad;

    const double sin_t = std::sin(lat_t), cos_t = std::cos(lat_t);
    const double sin_o = std::sin(lat_o), cos_o = std::cos(lat_o);

    const double half_sum = 0.5 * (lat_t + lat_o);
    const double half_diff = std::sin(0.5 * (lat_t - lat_o));
    const double d_sin = 2.0 * std::cos(half_sum) * half_diff;
    const double d_cos = -2.0 * std::sin(half_sum) * half_diff;

    const double w_t = std::sqrt(1.0 - kE2 * sin_t * sin_t);
    const double w_o = std::sqrt(1.0 - kE2 * sin_o * sin_o);
    const double n_o = kSemiMajor / w_o;
    const double d_w2 = kE2 * std::sin(lat_t + lat_o) * std::sin(lat_t - lat_o); // w_o^2 - w_t^2
    const double d_n = kSemiMajor * (d_w2 / (w_o + w_t)) / (w_t * w_o);
    const double d_h = target.altitude - origin.altitude;

    // Meridian-plane radius and polar coordinate differences.
    const double r_o = (n_o + origin.altitude) * cos_o;
    const double r_t = (n_o + d_n + target.altitude) * cos_t;
    const double d_r = (d_n + d_h) * cos_t + (n_o + origin.altitude) * d_cos;
    const double d_z = ((1.0 - kE2) * d_n + d_h) * sin_t + ((1.0 - kE2) * n_o + origin.altitude) * d_sin;

    const double s_half = std::sin(0.5 * dlon);
    const double radial = d_r * std::cos(dlon) - 2.0 * r_o * s_half * s_half;

    return {r_t * std::sin(dlon), -sin_o * radial + cos_o * d_z, cos_o * radial + sin_o * d_z};
}

GeodeticPosition enu_to_geodetic(const EnuVector &enu, const GeodeticPosition &origin)
{
    require_valid(origin, "origin");
    if (!std::isfinite(enu.east) || !std::isfinite(enu.north) || !std::isfinite(enu.up))
        throw Error(ErrorCode::ValueOutOfRange, "ENU vector has non-finite components");

    const double lat = origin.latitude * kDegToRad;
    const double lon = origin.longitude * kDegToRad;
    const double sl = std::sin(lat), cl = std::cos(lat);
    const double so = std::sin(lon), co = std::cos(lon);

    const Ecef o = to_ecef(origin);
    const Ecef d{-so * enu.east - sl * co * enu.north + cl * co * enu.up,
                 co * enu.east - sl * so * enu.north + cl * so * enu.up, cl * enu.north + sl * enu.up};
    return from_ecef({o.x + d.x, o.y + d.y, o.z + d.z});
}

LinkAngles link_angles(const GeodeticPosition &uav, const Attitude &attitude, const GroundStation &station,
                       double orientation_tol_deg)
{
    if (!attitude.is_valid())
        throw Error(ErrorCode::ValueOutOfRange, "attitude out of range");
    if (std::abs(attitude.pitch) > orientation_tol_deg || std::abs(attitude.roll) > orientation_tol_deg)
    {
        std::ostringstream os;
        os << "pitch " << attitude.pitch << " / roll " << attitude.roll << " deg exceed the fixed-orientation tolerance "
           << orientation_tol_deg << " deg";
        throw Error(ErrorCode::OrientationOutOfScope, os.str());
    }

    const EnuVector v = geodetic_to_enu(uav, station.position);
    const double horizontal = std::hypot(v.east, v.north);
    const double d3d = std::hypot(horizontal, v.up);
    if (!(d3d >= kMinLinkDistance))
        throw Error(ErrorCode::ZeroDistance, "UAV and station antennas coincide (d3d < 1 mm)");

    LinkAngles out;
    out.d3d = d3d;
    out.theta_g = std::atan2(v.up, horizontal) * kRadToDeg;
    // Azimuth is undefined at the poles; pin it so binning stays total.
    if (90.0 - std::abs(out.theta_g) <= kPoleToleranceDeg)
        out.phi_g = 0.0;
    else
        out.phi_g = wrap_360(std::atan2(v.east, v.north) * kRadToDeg);
    out.phi_u = wrap_360(out.phi_g + 180.0 - attitude.yaw);
    out.theta_u = out.theta_g;
    return out;
}

const char *orientation_reject_name(OrientationReject reason) noexcept
{
    switch (reason)
    {
    case OrientationReject::PitchExceedsTolerance:
        return "pitch-exceeds-tolerance";
    case OrientationReject::RollExceedsTolerance:
        return "roll-exceeds-tolerance";
    case OrientationReject::YawDeviatesFromExpected:
        return "yaw-deviates-from-expected";
    }
    return "unknown";
}

OrientationPartition validate_fixed_orientation(const std::vector<FlightSample> &samples, double expected_yaw,
                                                double tolerance)
{
    if (!(tolerance >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "orientation tolerance must be >= 0");

    OrientationPartition out;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const Attitude &a = samples[i].attitude;
        RejectedSample rej{i, {}};
        if (!(std::abs(a.pitch) <= tolerance))
            rej.reasons.push_back(OrientationReject::PitchExceedsTolerance);
        if (!(std::abs(a.roll) <= tolerance))
            rej.reasons.push_back(OrientationReject::RollExceedsTolerance);
        if (!(circular_distance_deg(a.yaw, expected_yaw) <= tolerance))
            rej.reasons.push_back(OrientationReject::YawDeviatesFromExpected);

        if (rej.reasons.empty())
            out.accepted.push_back(samples[i]);
        else
            out.rejected.push_back(std::move(rej));
    }
    return out;
}

} // namespace skypattern
