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
#include <string_view>
#include <variant>
#include <vector>

#include "skypattern/geometry.hpp"
#include "skypattern/pattern.hpp"
#include "skypattern/station.hpp"

namespace skypattern
{

enum class TrajectoryKind
{
    Orbit,     // circle of `radius_m` centered over the station
    Radial,    // straight overflight of `length_m` through the station along `heading_deg`
    Lawnmower, // serpentine sweep of `width_m` (east) x `length_m` (north), lanes `spacing_m` apart
};

/// Synthetic flight plan. Positions are laid out in the station's ENU frame;
/// each entry of `altitudes_m` (height above the station antenna) flies the
/// pattern once, in order.
struct TrajectorySpec
{
    TrajectoryKind kind = TrajectoryKind::Orbit;
    double radius_m = 0.0;
    double length_m = 0.0;
    double width_m = 0.0;
    double spacing_m = 0.0;
    double heading_deg = 0.0;
    std::vector<double> altitudes_m;
    double speed_mps = 10.0;
    double sample_rate_hz = 1.0;
    Attitude attitude;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

TrajectoryKind trajectory_kind_from_name(std::string_view name);
std::string_view trajectory_kind_name(TrajectoryKind kind) noexcept;

/// Reads a trajectory spec from JSON; `rng_seed` is left at 0 for the caller to set.
TrajectorySpec parse_trajectory_spec(std::string_view json_text);

/// Azimuth-symmetric gain g0 + g1 * cos^n(90 deg - theta), with the cosine
/// floored at zero below the horizon.
struct ParametricGain
{
    double g0_db = 0.0;
    double g1_db = 0.0;
    double exponent = 1.0;

    double operator()(double theta_deg) const;
};

class TruthPattern
{
  public:
    explicit TruthPattern(ParametricGain p);
    /// The grid must be complete.
    explicit TruthPattern(PatternGrid grid);

    double gain(double phi_u_deg, double theta_u_deg) const;

  private:
    std::variant<ParametricGain, PatternGrid> form_;
};

/// ENU waypoints of the trajectory, sampled every speed / sample_rate meters.
std::vector<EnuVector> trajectory_points(const TrajectorySpec &spec);

/// Flies `spec` around `station` and synthesises RSRP from the combined-pattern
/// link model plus i.i.d. Gaussian noise (dB) drawn from a generator seeded with
/// `spec.rng_seed`.
std::vector<FlightSample> generate_flight(const TrajectorySpec &spec, const GroundStation &station,
                                          const TruthPattern &truth, double noise_sigma_db);

} // namespace skypattern
