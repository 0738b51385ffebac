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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "skypattern/geometry.hpp"

namespace skypattern
{

struct PatternMetadata
{
    double frequency_hz = 0.0;
    std::string label;

    bool operator==(const PatternMetadata &) const = default;
};

/// Regular azimuth x elevation grid of gains in dB.
///
/// Cell (i, j) covers azimuth [i*az_bin, (i+1)*az_bin) and elevation
/// [-90 + j*el_bin, -90 + (j+1)*el_bin); values live at the cell centers.
/// Azimuth is periodic. A cell without a gain is "missing".
class PatternGrid
{
  public:
    PatternGrid() = default;
    PatternGrid(double az_bin_deg, double el_bin_deg);

    double az_bin_deg() const noexcept { return az_bin_; }
    double el_bin_deg() const noexcept { return el_bin_; }
    std::size_t n_az() const noexcept { return n_az_; }
    std::size_t n_el() const noexcept { return n_el_; }
    std::size_t size() const noexcept { return n_az_ * n_el_; }

    double az_center(std::size_t i) const noexcept { return (static_cast<double>(i) + 0.5) * az_bin_; }
    double el_center(std::size_t j) const noexcept { return -90.0 + (static_cast<double>(j) + 0.5) * el_bin_; }

    /// Bin holding `phi_deg` (any finite value, wrapped into [0, 360)).
    std::size_t az_index(double phi_deg) const noexcept;
    /// Bin holding `theta_deg`; +90 lands in the top row, out-of-range values clamp.
    std::size_t el_index(double theta_deg) const noexcept;

    const std::optional<double> &gain(std::size_t i, std::size_t j) const { return gains_[at(i, j)]; }
    const std::optional<double> &variance(std::size_t i, std::size_t j) const { return variances_[at(i, j)]; }
    std::uint64_t count(std::size_t i, std::size_t j) const { return counts_[at(i, j)]; }

    void set_gain(std::size_t i, std::size_t j, std::optional<double> g) { gains_[at(i, j)] = g; }
    void set_variance(std::size_t i, std::size_t j, std::optional<double> v) { variances_[at(i, j)] = v; }
    void set_count(std::size_t i, std::size_t j, std::uint64_t n) { counts_[at(i, j)] = n; }

    std::size_t missing_count() const noexcept;
    bool is_complete() const noexcept { return missing_count() == 0; }

    /// Bilinear interpolation at cell centers, periodic in azimuth and clamped in
    /// elevation. Throws IncompleteGrid when a contributing cell is missing.
    double interpolate(double phi_deg, double theta_deg) const;

    PatternMetadata metadata;

    bool operator==(const PatternGrid &) const = default;

  private:
    std::size_t at(std::size_t i, std::size_t j) const;

    double az_bin_ = 0.0;
    double el_bin_ = 0.0;
    std::size_t n_az_ = 0;
    std::size_t n_el_ = 0;
    std::vector<std::optional<double>> gains_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::optional<double>> variances_;
};

/// One per-measurement gain sample P_rx - P_tx + FSPL, tagged with UAV-frame angles.
struct GainObservation
{
    double phi_u = 0.0;
    double theta_u = 0.0;
    double gain_sample = 0.0; // dB
};

struct SampleFailure
{
    std::size_t index = 0;
    std::string reason;
};

struct ObservationSet
{
    std::vector<GainObservation> observations;
    std::vector<SampleFailure> failures; // samples whose geometry could not be resolved
};

struct GroundStation;
struct FlightSample;

/// Turns measurements into gain samples, one per sample in order. Samples whose
/// link geometry fails are reported in `failures` instead of aborting.
ObservationSet extract_observations(const std::vector<FlightSample> &samples, const GroundStation &station,
                                    double orientation_tol_deg = kDefaultOrientationToleranceDeg);

/// Per-bin arithmetic mean of the gain samples (dB domain), with counts and the
/// unbiased variance where a bin holds two or more samples.
///
/// The result does not depend on observation order: each bin's samples are
/// sorted before summation.
PatternGrid accumulate(const std::vector<GainObservation> &observations, double az_bin_deg, double el_bin_deg);

/// Count-weighted merge of two grids accumulated on the same layout.
PatternGrid merge(const PatternGrid &a, const PatternGrid &b);

/// Demotes bins observed fewer than `k_min` times to missing (count and variance cleared).
PatternGrid apply_min_count(const PatternGrid &grid, std::uint64_t k_min);

inline constexpr double kDefaultCompletionTolDb = 1e-6;
inline constexpr int kDefaultCompletionMaxIters = 50000;

struct CompletionResult
{
    PatternGrid grid;
    bool converged = false;
    int iterations = 0;
    double final_update = 0.0; // largest per-cell change in the last sweep, dB
};

/// Fills missing cells with the discrete harmonic extension of the known cells.
///
/// Known cells are fixed. Each missing cell converges to the mean of its four
/// neighbours, with azimuth wraparound and a mirror (zero normal derivative)
/// boundary beyond the +-90 deg rows. Gauss-Seidel sweeps run until the largest
/// update drops below `tol_db` or `max_iters` is reached.
CompletionResult complete_grid(const PatternGrid &grid, double tol_db = kDefaultCompletionTolDb,
                               int max_iters = kDefaultCompletionMaxIters);

/// Reads an anechoic-chamber pattern: every cell must carry a gain.
PatternGrid load_anechoic(const std::filesystem::path &path);

} // namespace skypattern
