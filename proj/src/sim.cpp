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


#include "skypattern/sim.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <json.hpp>

#include "skypattern/error.hpp"
#include "skypattern/link_budget.hpp"

namespace skypattern
{

namespace
{

constexpr double kDegToRad = std::numbers::pi / 180.0;

void require_positive(double v, const char *name)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw Error(ErrorCode::ValueOutOfRange, std::string("trajectory ") + name + " must be > 0");
}

/// Samples a polyline every `step` meters of arc length, starting at its first vertex.
void sample_polyline(const std::vector<std::pair<double, double>> &vertices, double step, double up,
                     std::vector<EnuVector> &out)
{
    double carry = 0.0; // distance into the current segment where the next sample falls
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k)
    {
        const auto [e0, n0] = vertices[k];
        const auto [e1, n1] = vertices[k + 1];
        const double len = std::hypot(e1 - e0, n1 - n0);
        double s = carry;
        for (; s < len; s += step)
        {
            const double f = s / len;
            out.push_back({e0 + f * (e1 - e0), n0 + f * (n1 - n0), up});
        }
        carry = s - len;
    }
    out.push_back({vertices.back().first, vertices.back().second, up});
}

} // namespace

void TrajectorySpec::validate() const
{
    switch (kind)
    {
    case TrajectoryKind::Orbit:
        require_positive(radius_m, "radius_m");
        break;
    case TrajectoryKind::Radial:
        require_positive(length_m, "length_m");
        if (!std::isfinite(heading_deg))
            throw Error(ErrorCode::ValueOutOfRange, "trajectory heading_deg must be finite");
        break;
    case TrajectoryKind::Lawnmower:
        require_positive(width_m, "width_m");
        require_positive(length_m, "length_m");
        require_positive(spacing_m, "spacing_m");
        break;
    }
    require_positive(speed_mps, "speed_mps");
    require_positive(sample_rate_hz, "sample_rate_hz");
    if (altitudes_m.empty())
        throw Error(ErrorCode::ValueOutOfRange, "trajectory needs at least one altitude");
    for (double a : altitudes_m)
        if (!std::isfinite(a))
            throw Error(ErrorCode::ValueOutOfRange, "trajectory altitudes must be finite");
    if (!attitude.is_valid())
        throw Error(ErrorCode::ValueOutOfRange, "trajectory attitude out of range");
}

TrajectoryKind trajectory_kind_from_name(std::string_view name)
{
    if (name == "orbit")
        return TrajectoryKind::Orbit;
    if (name == "radial")
        return TrajectoryKind::Radial;
    if (name == "lawnmower")
        return TrajectoryKind::Lawnmower;
    throw Error(ErrorCode::ValueOutOfRange, "unknown trajectory kind '" + std::string(name) + "'");
}

std::string_view trajectory_kind_name(TrajectoryKind kind) noexcept
{
    switch (kind)
    {
    case TrajectoryKind::Orbit:
        return "orbit";
    case TrajectoryKind::Radial:
        return "radial";
    case TrajectoryKind::Lawnmower:
        return "lawnmower";
    }
    return "orbit";
}

TrajectorySpec parse_trajectory_spec(std::string_view json_text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(json_text);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw Error(ErrorCode::ParseError, std::string("trajectory spec: ") + e.what());
    }
    try
    {
        if (!j.contains("kind"))
            throw Error(ErrorCode::MissingField, "kind");
        if (!j.contains("altitudes_m"))
            throw Error(ErrorCode::MissingField, "altitudes_m");

        TrajectorySpec spec;
        spec.kind = trajectory_kind_from_name(j.at("kind").get<std::string>());
        spec.radius_m = j.value("radius_m", 0.0);
        spec.length_m = j.value("length_m", 0.0);
        spec.width_m = j.value("width_m", 0.0);
        spec.spacing_m = j.value("spacing_m", 0.0);
        spec.heading_deg = j.value("heading_deg", 0.0);
        spec.altitudes_m = j.at("altitudes_m").get<std::vector<double>>();
        spec.speed_mps = j.value("speed_mps", spec.speed_mps);
        spec.sample_rate_hz = j.value("sample_rate_hz", spec.sample_rate_hz);
        if (j.contains("attitude"))
        {
            const auto &a = j.at("attitude");
            spec.attitude = {a.value("yaw_deg", 0.0), a.value("pitch_deg", 0.0), a.value("roll_deg", 0.0)};
        }
        spec.validate();
        return spec;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw Error(ErrorCode::ParseError, std::string("trajectory spec: ") + e.what());
    }
}

double ParametricGain::operator()(double theta_deg) const
{
    const double c = std::max(0.0, std::cos((90.0 - theta_deg) * kDegToRad));
    return g0_db + g1_db * std::pow(c, exponent);
}

TruthPattern::TruthPattern(ParametricGain p) : form_(p)
{
    if (!std::isfinite(p.g0_db) || !std::isfinite(p.g1_db) || !(p.exponent > 0.0))
        throw Error(ErrorCode::ValueOutOfRange, "parametric truth needs finite gains and exponent > 0");
}

TruthPattern::TruthPattern(PatternGrid grid) : form_(std::move(grid))
{
    if (!std::get<PatternGrid>(form_).is_complete())
        throw Error(ErrorCode::IncompleteGrid, "truth pattern grid has missing cells");
}

double TruthPattern::gain(double phi_u_deg, double theta_u_deg) const
{
    if (const auto *p = std::get_if<ParametricGain>(&form_))
        return (*p)(theta_u_deg);
    return std::get<PatternGrid>(form_).interpolate(phi_u_deg, theta_u_deg);
}

std::vector<EnuVector> trajectory_points(const TrajectorySpec &spec)
{
    spec.validate();
    const double step = spec.speed_mps / spec.sample_rate_hz;
    std::vector<EnuVector> out;
    for (double up : spec.altitudes_m)
    {
        switch (spec.kind)
        {
        case TrajectoryKind::Orbit: {
            const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(2.0 * std::numbers::pi * spec.radius_m / step)));
            for (std::size_t k = 0; k < n; ++k)
            {
                const double psi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
                out.push_back({spec.radius_m * std::sin(psi), spec.radius_m * std::cos(psi), up});
            }
            break;
        }
        case TrajectoryKind::Radial: {
            const double h = spec.heading_deg * kDegToRad;
            const double half = 0.5 * spec.length_m;
            sample_polyline({{-half * std::sin(h), -half * std::cos(h)}, {half * std::sin(h), half * std::cos(h)}},
                            step, up, out);
            break;
        }
        case TrajectoryKind::Lawnmower: {
            std::vector<std::pair<double, double>> vertices;
            const double west = -0.5 * spec.width_m, east = 0.5 * spec.width_m;
            const auto lanes = static_cast<std::size_t>(std::floor(spec.length_m / spec.spacing_m + 1e-9)) + 1;
            for (std::size_t m = 0; m < lanes; ++m)
            {
                const double north = -0.5 * spec.length_m + static_cast<double>(m) * spec.spacing_m;
                if (m % 2 == 0)
                {
                    vertices.emplace_back(west, north);
                    vertices.emplace_back(east, north);
                }
                else
                {
                    vertices.emplace_back(east, north);
                    vertices.emplace_back(west, north);
                }
            }
            sample_polyline(vertices, step, up, out);
            break;
        }
        }
    }
    return out;
}

std::vector<FlightSample> generate_flight(const TrajectorySpec &spec, const GroundStation &station,
                                          const TruthPattern &truth, double noise_sigma_db)
{
    if (!(noise_sigma_db >= 0.0) || !std::isfinite(noise_sigma_db))
        throw Error(ErrorCode::ValueOutOfRange, "noise sigma must be >= 0");
    const std::vector<EnuVector> points = trajectory_points(spec);

    std::mt19937_64 rng(spec.rng_seed);
    std::normal_distribution<double> noise(0.0, noise_sigma_db > 0.0 ? noise_sigma_db : 1.0);
    constexpr double kAnyOrientation = std::numeric_limits<double>::infinity();

    std::vector<FlightSample> out;
    out.reserve(points.size());
    for (std::size_t k = 0; k < points.size(); ++k)
    {
        FlightSample s;
        s.timestamp = static_cast<double>(k) / spec.sample_rate_hz;
        s.position = enu_to_geodetic(points[k], station.position);
        s.attitude = spec.attitude;

        LinkAngles a;
        try
        {
            a = link_angles(s.position, s.attitude, station, kAnyOrientation);
        }
        catch (const Error &e)
        {
            if (e.code() != ErrorCode::ZeroDistance)
                throw;
            throw Error(ErrorCode::DegenerateTrajectory,
                        "trajectory sample " + std::to_string(k) + " coincides with the station antenna");
        }
        s.rsrp = station.tx_power - fspl_db(a.d3d, station.frequency) + truth.gain(a.phi_u, a.theta_u);
        if (noise_sigma_db > 0.0)
            s.rsrp += noise(rng);
        out.push_back(s);
    }
    return out;
}

} // namespace skypattern
