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


#include "skypattern/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "skypattern/dataio.hpp"
#include "skypattern/error.hpp"
#include "skypattern/link_budget.hpp"
#include "skypattern/station.hpp"

namespace skypattern
{

namespace
{

std::size_t bins_in_span(double width, double span, const char *axis)
{
    if (!std::isfinite(width) || !(width > 0.0) || width > span)
    {
        std::ostringstream os;
        os << axis << " bin width " << width << " deg must be in (0, " << span << "]";
        throw Error(ErrorCode::InvalidBinWidth, os.str());
    }
    const double ratio = span / width;
    const double n = std::round(ratio);
    if (std::abs(n * width - span) > 1e-9 * span)
    {
        std::ostringstream os;
        os << axis << " bin width " << width << " deg does not divide " << span << " deg evenly";
        throw Error(ErrorCode::InvalidBinWidth, os.str());
    }
    return static_cast<std::size_t>(n);
}

void require_same_layout(const PatternGrid &a, const PatternGrid &b)
{
    if (a.n_az() != b.n_az() || a.n_el() != b.n_el())
        throw Error(ErrorCode::InvalidArgument, "pattern grids have different layouts");
}

} // namespace

PatternGrid::PatternGrid(double az_bin_deg, double el_bin_deg)
    : az_bin_(az_bin_deg), el_bin_(el_bin_deg), n_az_(bins_in_span(az_bin_deg, 360.0, "azimuth")),
      n_el_(bins_in_span(el_bin_deg, 180.0, "elevation")), gains_(n_az_ * n_el_), counts_(n_az_ * n_el_, 0),
      variances_(n_az_ * n_el_)
{
}

std::size_t PatternGrid::at(std::size_t i, std::size_t j) const
{
    if (i >= n_az_ || j >= n_el_)
        throw std::out_of_range("pattern cell index out of range");
    return i * n_el_ + j;
}

std::size_t PatternGrid::az_index(double phi_deg) const noexcept
{
    const double u = std::floor(wrap_360(phi_deg) / az_bin_);
    if (!(u >= 0.0))
        return 0;
    return std::min(static_cast<std::size_t>(u), n_az_ - 1);
}

std::size_t PatternGrid::el_index(double theta_deg) const noexcept
{
    const double v = std::floor((theta_deg + 90.0) / el_bin_);
    if (!(v >= 0.0))
        return 0;
    return std::min(static_cast<std::size_t>(v), n_el_ - 1);
}

std::size_t PatternGrid::missing_count() const noexcept
{
    return static_cast<std::size_t>(std::count_if(gains_.begin(), gains_.end(), [](const auto &g) { return !g; }));
}

double PatternGrid::interpolate(double phi_deg, double theta_deg) const
{
    if (n_az_ == 0)
        throw Error(ErrorCode::EmptyGrid, "interpolation on an empty grid");
    if (!std::isfinite(phi_deg) || !std::isfinite(theta_deg))
        throw Error(ErrorCode::ValueOutOfRange, "interpolation angle is not finite");

    const double u = wrap_360(phi_deg) / az_bin_ - 0.5;
    const double u0 = std::floor(u);
    const double t = u - u0;
    const auto n_az = static_cast<long long>(n_az_);
    const auto i0 = static_cast<std::size_t>(((static_cast<long long>(u0) % n_az) + n_az) % n_az);
    const std::size_t i1 = (i0 + 1) % n_az_;

    const double v = std::clamp((theta_deg + 90.0) / el_bin_ - 0.5, 0.0, static_cast<double>(n_el_ - 1));
    auto j0 = static_cast<std::size_t>(std::floor(v));
    double s = v - static_cast<double>(j0);
    if (j0 >= n_el_ - 1)
    {
        j0 = n_el_ - 1;
        s = 0.0;
    }
    const std::size_t j1 = std::min(j0 + 1, n_el_ - 1);

    const std::size_t cells[4][2] = {{i0, j0}, {i1, j0}, {i0, j1}, {i1, j1}};
    const double weights[4] = {(1.0 - t) * (1.0 - s), t * (1.0 - s), (1.0 - t) * s, t * s};

    double value = 0.0;
    for (int k = 0; k < 4; ++k)
    {
        if (weights[k] == 0.0)
            continue;
        const auto &g = gains_[cells[k][0] * n_el_ + cells[k][1]];
        if (!g)
        {
            std::ostringstream os;
            os << "pattern cell (az " << az_center(cells[k][0]) << ", el " << el_center(cells[k][1])
               << ") is missing; complete the grid first";
            throw Error(ErrorCode::IncompleteGrid, os.str());
        }
        value += weights[k] * *g;
    }
    return value;
}

ObservationSet extract_observations(const std::vector<FlightSample> &samples, const GroundStation &station,
                                    double orientation_tol_deg)
{
    ObservationSet out;
    out.observations.reserve(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k)
    {
        const FlightSample &s = samples[k];
        try
        {
            const LinkAngles a = link_angles(s.position, s.attitude, station, orientation_tol_deg);
            const double gain = s.rsrp - station.tx_power + fspl_db(a.d3d, station.frequency);
            out.observations.push_back({a.phi_u, a.theta_u, gain});
        }
        catch (const Error &e)
        {
            out.failures.push_back({k, std::string(error_code_name(e.code())) + ": " + e.what()});
        }
    }
    return out;
}

PatternGrid accumulate(const std::vector<GainObservation> &observations, double az_bin_deg, double el_bin_deg)
{
    PatternGrid grid(az_bin_deg, el_bin_deg);
    std::vector<std::vector<double>> buckets(grid.size());
    for (const GainObservation &o : observations)
    {
        if (!std::isfinite(o.phi_u) || !std::isfinite(o.theta_u) || !std::isfinite(o.gain_sample))
            throw Error(ErrorCode::InvalidArgument, "gain observation has non-finite fields");
        buckets[grid.az_index(o.phi_u) * grid.n_el() + grid.el_index(o.theta_u)].push_back(o.gain_sample);
    }

    for (std::size_t i = 0; i < grid.n_az(); ++i)
    {
        for (std::size_t j = 0; j < grid.n_el(); ++j)
        {
            auto &b = buckets[i * grid.n_el() + j];
            if (b.empty())
                continue;
            std::sort(b.begin(), b.end());
            const auto n = static_cast<double>(b.size());
            const double mean = std::accumulate(b.begin(), b.end(), 0.0) / n;
            grid.set_gain(i, j, mean);
            grid.set_count(i, j, b.size());
            if (b.size() >= 2)
            {
                double ss = 0.0;
                for (double x : b)
                    ss += (x - mean) * (x - mean);
                grid.set_variance(i, j, ss / (n - 1.0));
            }
        }
    }
    return grid;
}

PatternGrid merge(const PatternGrid &a, const PatternGrid &b)
{
    require_same_layout(a, b);
    PatternGrid out = a;
    for (std::size_t i = 0; i < a.n_az(); ++i)
    {
        for (std::size_t j = 0; j < a.n_el(); ++j)
        {
            const std::uint64_t na = a.gain(i, j) ? a.count(i, j) : 0;
            const std::uint64_t nb = b.gain(i, j) ? b.count(i, j) : 0;
            if (nb == 0)
                continue;
            if (na == 0)
            {
                out.set_gain(i, j, b.gain(i, j));
                out.set_count(i, j, nb);
                out.set_variance(i, j, b.variance(i, j));
                continue;
            }
            const double ma = *a.gain(i, j), mb = *b.gain(i, j);
            const auto fa = static_cast<double>(na), fb = static_cast<double>(nb), n = fa + fb;
            const double delta = mb - ma;
            const double m2 = a.variance(i, j).value_or(0.0) * (fa - 1.0) + b.variance(i, j).value_or(0.0) * (fb - 1.0) +
                              delta * delta * fa * fb / n;
            out.set_gain(i, j, (fa * ma + fb * mb) / n);
            out.set_count(i, j, na + nb);
            out.set_variance(i, j, m2 / (n - 1.0));
        }
    }
    return out;
}

PatternGrid apply_min_count(const PatternGrid &grid, std::uint64_t k_min)
{
    if (k_min < 1)
        throw Error(ErrorCode::InvalidArgument, "k_min must be >= 1");
    PatternGrid out = grid;
    for (std::size_t i = 0; i < out.n_az(); ++i)
        for (std::size_t j = 0; j < out.n_el(); ++j)
            if (out.count(i, j) < k_min)
            {
                out.set_gain(i, j, std::nullopt);
                out.set_variance(i, j, std::nullopt);
                out.set_count(i, j, 0);
            }
    return out;
}

CompletionResult complete_grid(const PatternGrid &grid, double tol_db, int max_iters)
{
    if (!(tol_db > 0.0) || max_iters < 0)
        throw Error(ErrorCode::InvalidArgument, "completion needs tol > 0 and max_iters >= 0");

    const std::size_t n_az = grid.n_az(), n_el = grid.n_el();
    std::vector<double> value(grid.size(), 0.0);
    std::vector<std::size_t> unknown;
    double known_sum = 0.0;
    std::size_t known = 0;
    for (std::size_t i = 0; i < n_az; ++i)
        for (std::size_t j = 0; j < n_el; ++j)
        {
            if (const auto &g = grid.gain(i, j))
            {
                value[i * n_el + j] = *g;
                known_sum += *g;
                ++known;
            }
            else
                unknown.push_back(i * n_el + j);
        }
    if (known == 0)
        throw Error(ErrorCode::EmptyGrid, "cannot complete a grid without any known cell");

    CompletionResult result{grid, unknown.empty(), 0, 0.0};
    if (unknown.empty())
        return result;

    const double start = known_sum / static_cast<double>(known);
    for (std::size_t c : unknown)
        value[c] = start;

    // Neighbour slots that fold back onto the cell itself (mirror rows, or a
    // single azimuth column) drop out of the Laplace equation: 4u = sum + k*u.
    struct Stencil
    {
        std::size_t cell;
        std::size_t nb[4];
        int n_other;
    };
    std::vector<Stencil> stencils;
    stencils.reserve(unknown.size());
    for (std::size_t c : unknown)
    {
        const std::size_t i = c / n_el, j = c % n_el;
        Stencil s{c, {}, 0};
        const std::size_t cand[4] = {((i + n_az - 1) % n_az) * n_el + j, ((i + 1) % n_az) * n_el + j,
                                     j > 0 ? c - 1 : c, j + 1 < n_el ? c + 1 : c};
        for (std::size_t nb : cand)
            if (nb != c)
                s.nb[s.n_other++] = nb;
        if (s.n_other > 0)
            stencils.push_back(s);
    }

    while (result.iterations < max_iters)
    {
        double max_update = 0.0;
        for (const Stencil &s : stencils)
        {
            double sum = 0.0;
            for (int k = 0; k < s.n_other; ++k)
                sum += value[s.nb[k]];
            const double next = sum / s.n_other;
            max_update = std::max(max_update, std::abs(next - value[s.cell]));
            value[s.cell] = next;
        }
        ++result.iterations;
        result.final_update = max_update;
        if (max_update < tol_db)
        {
            result.converged = true;
            break;
        }
    }

    for (std::size_t c : unknown)
        result.grid.set_gain(c / n_el, c % n_el, value[c]);
    return result;
}

PatternGrid load_anechoic(const std::filesystem::path &path)
{
    PatternGrid grid = read_pattern(path);
    for (std::size_t i = 0; i < grid.n_az(); ++i)
        for (std::size_t j = 0; j < grid.n_el(); ++j)
        {
            if (!grid.gain(i, j))
            {
                std::ostringstream os;
                os << path.string() << ": anechoic pattern has no gain at az " << grid.az_center(i) << ", el "
                   << grid.el_center(j);
                throw Error(ErrorCode::GridShapeMismatch, os.str());
            }
            grid.set_count(i, j, 1);
            grid.set_variance(i, j, std::nullopt);
        }
    return grid;
}

} // namespace skypattern
