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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "skypattern/dataio.hpp"
#include "skypattern/error.hpp"
#include "skypattern/eval.hpp"
#include "skypattern/geometry.hpp"
#include "skypattern/link_budget.hpp"
#include "skypattern/pattern.hpp"
#include "skypattern/pipeline.hpp"
#include "skypattern/sim.hpp"
#include "skypattern/station.hpp"

using namespace skypattern;
namespace fs = std::filesystem;

namespace
{

constexpr double kRad = std::numbers::pi / 180.0;

// 40-digit evaluations, independent of the library.
constexpr double kFspl1km332GHz = 102.8705448959640996929;
constexpr double kTwentyLog2 = 6.020599913279623904275;

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. FSPL

Outcome fspl_correctness()
{
    const double v = fspl_db(1000.0, 3.32e9);
    double worst_doubling = 0.0;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(1.0, 1e5), f(1e8, 1e10);
    for (int k = 0; k < 1000; ++k)
    {
        const double dd = d(rng), ff = f(rng);
        worst_doubling = std::max(worst_doubling, std::abs(fspl_db(2 * dd, ff) - fspl_db(dd, ff) - kTwentyLog2));
    }
    const bool pass = std::abs(v - kFspl1km332GHz) <= 1e-3 && std::abs(v - 102.870) <= 1e-3 && worst_doubling <= 1e-9;
    return {pass, "fspl(1 km, 3.32 GHz) = " + fmt("%.6f", v) + " dB, worst doubling error " +
                      fmt("%.2e", worst_doubling) + " dB"};
}

// ---------------------------------------------------------------------------
// 2. Angle identities

Outcome angle_identities()
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> lat(-80, 80), lon(-180, 180), alt(-50, 1500), horiz(-20000, 20000),
        up(-500, 5000);
    std::size_t bad = 0;
    for (int k = 0; k < 1000; ++k)
    {
        GroundStation st;
        st.position = {lat(rng), lon(rng), alt(rng)};
        const GeodeticPosition uav = enu_to_geodetic({horiz(rng), horiz(rng), up(rng)}, st.position);
        const LinkAngles a = link_angles(uav, Attitude{}, st);
        if (a.phi_u != wrap_360(a.phi_g + 180.0) || a.theta_u != a.theta_g)
            ++bad;
    }
    return {bad == 0, std::to_string(1000 - bad) + "/1000 placements satisfy both identities exactly"};
}

// ---------------------------------------------------------------------------
// 3. Completion oracle

std::vector<double> dense_dirichlet(const PatternGrid &g)
{
    const std::size_t n_az = g.n_az(), n_el = g.n_el();
    std::vector<long> slot(g.size(), -1);
    long n = 0;
    for (std::size_t c = 0; c < g.size(); ++c)
        if (!g.gain(c / n_el, c % n_el))
            slot[c] = n++;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < n_az; ++i)
        for (std::size_t j = 0; j < n_el; ++j)
        {
            const long r = slot[i * n_el + j];
            if (r < 0)
                continue;
            std::vector<std::pair<std::size_t, std::size_t>> nbs = {{(i + n_az - 1) % n_az, j}, {(i + 1) % n_az, j}};
            if (j > 0)
                nbs.push_back({i, j - 1});
            if (j + 1 < n_el)
                nbs.push_back({i, j + 1});
            for (auto [p, q] : nbs)
            {
                if (p == i && q == j)
                    continue;
                a(r, r) += 1.0;
                if (const long c = slot[p * n_el + q]; c >= 0)
                    a(r, c) -= 1.0;
                else
                    b(r) += *g.gain(p, q);
            }
        }
    const Eigen::VectorXd x = a.fullPivLu().solve(b);
    std::vector<double> out(g.size());
    for (std::size_t c = 0; c < g.size(); ++c)
        out[c] = slot[c] < 0 ? *g.gain(c / n_el, c % n_el) : x(slot[c]);
    return out;
}

constexpr double kSolverTolDb = 1e-9;

Outcome completion_oracle()
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> gain(-25.0, 10.0);
    std::uniform_int_distribution<int> blocks(1, 3), az0(0, 7), el0(0, 3), az_len(1, 4), el_len(1, 3);
    double worst = 0.0;
    bool max_principle = true, converged = true;
    for (int trial = 0; trial < 20; ++trial)
    {
        PatternGrid g(45.0, 45.0); // 8 x 4
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 4; ++j)
            {
                g.set_gain(i, j, gain(rng));
                g.set_count(i, j, 1);
            }
        for (int b = blocks(rng); b > 0; --b)
        {
            const int i0 = az0(rng), j0 = el0(rng), ni = az_len(rng), nj = el_len(rng);
            for (int di = 0; di < ni; ++di)
                for (int dj = 0; dj < nj && j0 + dj < 4; ++dj)
                {
                    g.set_gain((i0 + di) % 8, j0 + dj, std::nullopt);
                    g.set_count((i0 + di) % 8, j0 + dj, 0);
                }
        }
        if (g.missing_count() == g.size())
            g.set_gain(0, 0, 0.0);

        // The solver stops on the size of its last update, which is not a bound on
        // its distance to the exact solution; ask for updates well below 1e-6 dB.
        const CompletionResult r = complete_grid(g, kSolverTolDb);
        converged = converged && r.converged;
        const std::vector<double> oracle = dense_dirichlet(g);
        double lo = INFINITY, hi = -INFINITY;
        for (std::size_t c = 0; c < g.size(); ++c)
            if (const auto &v = g.gain(c / 4, c % 4))
            {
                lo = std::min(lo, *v);
                hi = std::max(hi, *v);
            }
        for (std::size_t c = 0; c < g.size(); ++c)
        {
            const double v = *r.grid.gain(c / 4, c % 4);
            worst = std::max(worst, std::abs(v - oracle[c]));
            max_principle = max_principle && v >= lo && v <= hi;
        }
    }
    return {converged && worst <= 1e-6 && max_principle,
            "solver tol " + fmt("%.0e", kSolverTolDb) + " dB, worst deviation from dense solve " + fmt("%.2e", worst) +
                " dB, maximum principle " +
                (max_principle ? "holds" : "violated")};
}

// ---------------------------------------------------------------------------
// Scenario inputs shared by criteria 4-8.

const ParametricGain kSmoothTruth{-1.0, 4.0, 2.0};

double taper(double x, double x0, double x1) // 0 at x0, 1 at x1, raised cosine between
{
    const double t = std::clamp((x - x0) / (x1 - x0), 0.0, 1.0);
    return 0.5 * (1.0 - std::cos(std::numbers::pi * t));
}

double environment_db(double theta) // +15 dB mid-elevation lobe, -10 dB at low elevation
{
    const double lobe = 15.0 * taper(theta, 10.0, 25.0) * (1.0 - taper(theta, 65.0, 80.0));
    const double low = -10.0 * (1.0 - taper(theta, 10.0, 20.0));
    return lobe + low;
}

struct Inputs
{
    fs::path dir;
    fs::path station;          // no anechoic references
    fs::path station_anechoic; // references the lobe-free anechoic pair
    fs::path uav_pattern, gs_pattern, truth_pattern;
    fs::path lawnmower, orbit_test, orbit_dense, lawnmower_wide, orbit_rings;
};

std::string orbit_json(double radius, const std::vector<double> &elevations, double speed, double rate)
{
    nlohmann::json j{{"kind", "orbit"}, {"radius_m", radius}, {"speed_mps", speed}, {"sample_rate_hz", rate}};
    for (double el : elevations)
        j["altitudes_m"].push_back(radius * std::tan(el * kRad));
    return j.dump(2) + "\n";
}

Inputs write_inputs(const fs::path &dir)
{
    fs::create_directories(dir);
    Inputs in;
    in.dir = dir;
    const std::string pos = R"("position": {"lat_deg": 35.72748, "lon_deg": -78.69574, "alt_m": 92.0})";

    in.station = dir / "station.json";
    write_text_atomic(in.station, "{\"label\": \"ugv\", " + pos + ", \"tx_power_dbm\": 10, \"frequency_hz\": 3.32e9}\n");

    // Lobe-free anechoic pair on a 1 deg grid and the environment-modified truth.
    PatternGrid uav(1.0, 1.0), gs(1.0, 1.0);
    for (std::size_t i = 0; i < uav.n_az(); ++i)
        for (std::size_t j = 0; j < uav.n_el(); ++j)
        {
            const double phi = uav.az_center(i) * kRad, theta = uav.el_center(j) * kRad;
            uav.set_gain(i, j, 2.0 - 12.0 * std::sin(theta) * std::sin(theta) + 1.5 * std::cos(phi));
            gs.set_gain(i, j, 12.0 * 0.5 * (1.0 + std::cos(phi)) - 6.0 - 0.1 * std::abs(uav.el_center(j)));
            uav.set_count(i, j, 1);
            gs.set_count(i, j, 1);
        }
    uav.metadata = {3.32e9, "anechoic uav"};
    gs.metadata = {3.32e9, "anechoic gs"};
    constexpr double kBoresight = 90.0;
    PatternGrid truth = combine_anechoic_pair(uav, gs, kBoresight);
    for (std::size_t i = 0; i < truth.n_az(); ++i)
        for (std::size_t j = 0; j < truth.n_el(); ++j)
            truth.set_gain(i, j, *truth.gain(i, j) + environment_db(truth.el_center(j)));
    truth.metadata = {3.32e9, "in-situ truth"};
    in.uav_pattern = dir / "anechoic_uav.csv";
    in.gs_pattern = dir / "anechoic_gs.csv";
    in.truth_pattern = dir / "truth_pattern.csv";
    write_pattern(uav, in.uav_pattern);
    write_pattern(gs, in.gs_pattern);
    write_pattern(truth, in.truth_pattern);

    in.station_anechoic = dir / "station_anechoic.json";
    write_text_atomic(in.station_anechoic, "{\"label\": \"ugv\", " + pos +
                                               ", \"tx_power_dbm\": 10, \"frequency_hz\": 3.32e9, "
                                               "\"boresight_azimuth_deg\": 90, "
                                               "\"anechoic_uav_pattern\": \"anechoic_uav.csv\", "
                                               "\"anechoic_gs_pattern\": \"anechoic_gs.csv\"}\n");

    in.lawnmower = dir / "lawnmower.json";
    write_text_atomic(in.lawnmower, R"({"kind": "lawnmower", "width_m": 600, "length_m": 600, "spacing_m": 10,
  "altitudes_m": [50, 100, 150], "speed_mps": 2, "sample_rate_hz": 1}
)");
    in.orbit_test = dir / "orbit_test.json";
    write_text_atomic(in.orbit_test, R"({"kind": "orbit", "radius_m": 180, "altitudes_m": [75, 125],
  "speed_mps": 3, "sample_rate_hz": 1}
)");
    in.orbit_dense = dir / "orbit_dense.json";
    write_text_atomic(in.orbit_dense, orbit_json(200.0, {11, 25, 41, 59, 75}, 1.0, 10.0));
    in.lawnmower_wide = dir / "lawnmower_wide.json";
    write_text_atomic(in.lawnmower_wide, R"({"kind": "lawnmower", "width_m": 800, "length_m": 800, "spacing_m": 10,
  "altitudes_m": [30, 80, 160, 300], "speed_mps": 4, "sample_rate_hz": 1}
)");
    in.orbit_rings = dir / "orbit_rings.json";
    write_text_atomic(in.orbit_rings, orbit_json(300.0, {6, 30, 45, 60}, 3.0, 1.0));
    return in;
}

struct Scenario4
{
    LearnResult learn;
    EvaluateResult predict;
};

Scenario4 run_round_trip(const Inputs &in, const fs::path &out)
{
    SimulateOptions sim;
    sim.station = in.station;
    sim.parametric = kSmoothTruth;
    sim.trajectory = in.lawnmower;
    sim.seed = 41;
    sim.out_dir = out / "train";
    run_simulate(sim);
    sim.trajectory = in.orbit_test;
    sim.seed = 42;
    sim.out_dir = out / "test";
    run_simulate(sim);

    LearnOptions learn;
    learn.logs = {out / "train" / "flight.csv"};
    learn.station = in.station;
    learn.az_bin_deg = 5.0;
    learn.el_bin_deg = 2.0;
    learn.out_dir = out / "learn";
    Scenario4 s{run_learn(learn), {}};

    EvaluateOptions ev;
    ev.log = out / "test" / "flight.csv";
    ev.station = in.station;
    ev.grid = out / "learn" / "pattern_completed.csv";
    ev.out_dir = out / "predict";
    s.predict = run_predict(ev);
    return s;
}

LearnResult run_noisy(const Inputs &in, const fs::path &out)
{
    SimulateOptions sim;
    sim.station = in.station;
    sim.parametric = kSmoothTruth;
    sim.trajectory = in.orbit_dense;
    sim.noise_sigma_db = 2.0;
    sim.seed = 51;
    sim.out_dir = out / "train";
    run_simulate(sim);

    LearnOptions learn;
    learn.logs = {out / "train" / "flight.csv"};
    learn.station = in.station;
    learn.k_min = 100;
    learn.out_dir = out / "learn";
    return run_learn(learn);
}

EvaluateResult run_mismatch(const Inputs &in, const fs::path &out)
{
    SimulateOptions sim;
    sim.station = in.station_anechoic;
    sim.truth_pattern = in.truth_pattern;
    sim.noise_sigma_db = 2.0;
    sim.trajectory = in.lawnmower_wide;
    sim.seed = 61;
    sim.out_dir = out / "train";
    run_simulate(sim);
    sim.trajectory = in.orbit_rings;
    sim.seed = 62;
    sim.out_dir = out / "test";
    run_simulate(sim);

    LearnOptions learn;
    learn.logs = {out / "train" / "flight.csv"};
    learn.station = in.station_anechoic;
    learn.out_dir = out / "learn";
    run_learn(learn);

    EvaluateOptions ev;
    ev.log = out / "test" / "flight.csv";
    ev.station = in.station_anechoic;
    ev.grid = out / "learn" / "pattern_completed.csv";
    ev.baseline = true;
    ev.test_label = "orbit-rings";
    ev.train_label = "lawnmower";
    ev.out_dir = out / "evaluate";
    return run_evaluate(ev);
}

// ---------------------------------------------------------------------------
// 4. Noise-free round trip

Outcome check_round_trip(const Scenario4 &s)
{
    const PatternGrid &raw = s.learn.raw;
    std::size_t checked = 0;
    double worst = 0.0;
    for (const ResidualRecord &r : s.predict.combined.residuals)
    {
        if (raw.count(raw.az_index(r.phi_u_deg), raw.el_index(r.theta_u_deg)) == 0)
            continue;
        ++checked;
        worst = std::max(worst, r.abs_err_db);
    }
    return {checked >= 100 && worst <= 0.1, std::to_string(checked) + " of " +
                                                 std::to_string(s.predict.combined.residuals.size()) +
                                                 " test samples in co-visited bins, worst |error| " +
                                                 fmt("%.4f", worst) + " dB"};
}

// ---------------------------------------------------------------------------
// 5. Noisy estimator consistency

Outcome check_noisy(const Inputs &in, const fs::path &out, const LearnResult &learn)
{
    const GroundStation st = read_station_config(in.station);
    const FlightLog log = read_flight_log(out / "train" / "flight.csv");
    const PatternGrid &raw = learn.raw;

    // Per-bin mean of the noise-free truth over the samples that landed in it.
    std::map<std::size_t, std::pair<double, std::size_t>> truth;
    for (const FlightSample &s : log.samples)
    {
        const LinkAngles a = link_angles(s.position, s.attitude, st);
        auto &[sum, n] = truth[raw.az_index(a.phi_u) * raw.n_el() + raw.el_index(a.theta_u)];
        sum += kSmoothTruth(a.theta_u);
        ++n;
    }
    std::size_t populated = 0, within = 0;
    double worst = 0.0;
    for (const auto &[cell, sn] : truth)
    {
        const std::size_t i = cell / raw.n_el(), j = cell % raw.n_el();
        if (raw.count(i, j) < 100)
            continue;
        ++populated;
        const double dev = std::abs(*raw.gain(i, j) - sn.first / static_cast<double>(sn.second));
        worst = std::max(worst, dev);
        within += dev <= 0.6 ? 1 : 0;
    }
    const double share = populated ? static_cast<double>(within) / static_cast<double>(populated) : 0.0;
    return {populated >= 100 && share >= 0.99,
            std::to_string(within) + "/" + std::to_string(populated) + " bins with >= 100 samples within 0.6 dB (" +
                fmt("%.2f", 100.0 * share) + "%), worst " + fmt("%.3f", worst) + " dB"};
}

// ---------------------------------------------------------------------------
// 6. Directionality against the anechoic baseline

Outcome check_mismatch(const EvaluateResult &r, const fs::path &out)
{
    if (!r.baseline)
        return {false, "baseline report missing"};
    const std::string table = read_text_file(out / "evaluate" / "table.csv");
    if (table.rfind("test,train,mae_anechoic_db,mae_learned_db,delta_db\n", 0) != 0)
        return {false, "summary table missing or malformed"};
    const double gain = r.baseline->mae_db - r.combined.mae_db;
    return {gain >= 8.0, "learned MAE " + fmt("%.2f", r.combined.mae_db) + " dB vs anechoic MAE " +
                             fmt("%.2f", r.baseline->mae_db) + " dB (improvement " + fmt("%.2f", gain) + " dB)"};
}

// ---------------------------------------------------------------------------
// 7. Arithmetic identity across residual files

struct IdentityStats
{
    std::size_t rows = 0;
    std::size_t violations = 0;
};

void verify_identity(const fs::path &residual_file, const fs::path &log_file, const fs::path &station_file,
                     const Predictor &predictor, IdentityStats &stats)
{
    const std::vector<ResidualRecord> rows = read_residuals(residual_file);
    const GroundStation st = read_station_config(station_file);
    const OrientationPartition part = validate_fixed_orientation(read_flight_log(log_file).samples,
                                                                 st.expected_uav_yaw, kDefaultOrientationToleranceDeg);
    const LinkBudgetParams params = params_from_station(st);
    if (rows.size() != part.accepted.size())
    {
        stats.violations += std::max(rows.size(), part.accepted.size());
        return;
    }
    for (std::size_t k = 0; k < rows.size(); ++k)
    {
        const LinkAngles a = link_angles(part.accepted[k].position, part.accepted[k].attitude, st);
        const PowerPrediction p = predictor.predict(a, params);
        const bool same_row = rows[k].d3d_m == a.d3d && rows[k].rsrp_pred_dbm == p.rsrp;
        const bool identity = p.rsrp - (params.tx_power - p.fspl + p.gain_applied) == 0.0;
        stats.violations += same_row && identity ? 0 : 1;
        ++stats.rows;
    }
}

Outcome check_identity(const Inputs &in, const fs::path &run)
{
    IdentityStats stats;
    std::size_t files = 0;
    {
        const PatternGrid g = read_pattern(run / "c4" / "learn" / "pattern_completed.csv");
        verify_identity(run / "c4" / "predict" / "residuals_combined.csv", run / "c4" / "test" / "flight.csv",
                        in.station, Predictor::combined(g), stats);
        ++files;
    }
    {
        const fs::path dir = run / "c6";
        const PatternGrid g = read_pattern(dir / "learn" / "pattern_completed.csv");
        const PatternGrid uav = load_anechoic(in.uav_pattern), gs = load_anechoic(in.gs_pattern);
        verify_identity(dir / "evaluate" / "residuals_combined.csv", dir / "test" / "flight.csv",
                        in.station_anechoic, Predictor::combined(g), stats);
        verify_identity(dir / "evaluate" / "residuals_baseline.csv", dir / "test" / "flight.csv",
                        in.station_anechoic, Predictor::baseline(uav, gs), stats);
        files += 2;
    }
    return {stats.violations == 0 && stats.rows > 0,
            std::to_string(stats.rows - std::min(stats.rows, stats.violations)) + "/" + std::to_string(stats.rows) +
                " predictions in " + std::to_string(files) + " residual files reproduce bit for bit"};
}

// ---------------------------------------------------------------------------
// 8. Determinism

std::string manifest_without_paths(const fs::path &p)
{
    auto j = nlohmann::ordered_json::parse(read_text_file(p));
    for (auto &input : j["inputs"])
        input.erase("path");
    return j.dump();
}

Outcome check_determinism(const fs::path &a, const fs::path &b)
{
    std::size_t compared = 0, differing = 0;
    std::string first_diff;
    for (const auto &entry : fs::recursive_directory_iterator(a))
    {
        if (!entry.is_regular_file())
            continue;
        const fs::path rel = fs::relative(entry.path(), a);
        const fs::path other = b / rel;
        bool same = fs::exists(other);
        if (same)
            same = rel.filename() == "manifest.json"
                       ? manifest_without_paths(entry.path()) == manifest_without_paths(other)
                       : read_text_file(entry.path()) == read_text_file(other);
        ++compared;
        if (!same)
        {
            ++differing;
            if (first_diff.empty())
                first_diff = rel.generic_string();
        }
    }
    return {compared > 0 && differing == 0,
            std::to_string(compared - differing) + "/" + std::to_string(compared) + " files byte-identical" +
                (first_diff.empty() ? "" : " (first difference: " + first_diff + ")")};
}

// ---------------------------------------------------------------------------

using Clock = std::chrono::steady_clock;

struct Reporter
{
    int failures = 0;

    template <class F> auto timed(F &&f, double &seconds)
    {
        const auto t0 = Clock::now();
        auto result = f();
        seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return result;
    }

    void line(int number, const std::string &name, Outcome o, double seconds = -1.0, double budget = -1.0)
    {
        std::string detail = o.detail;
        if (seconds >= 0.0)
        {
            detail += "; " + fmt("%.2f", seconds) + " s";
            if (budget > 0.0)
            {
                detail += " (budget " + fmt("%.0f", budget) + " s)";
                o.pass = o.pass && seconds < budget;
            }
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", number, name.c_str(), detail.c_str());
        std::fflush(stdout);
    }

    void error(int number, const std::string &name, const std::exception &e)
    {
        line(number, name, {false, std::string("threw: ") + e.what()});
    }
};

template <class F> void guarded(Reporter &rep, int number, const std::string &name, F &&f)
{
    try
    {
        f();
    }
    catch (const std::exception &e)
    {
        rep.error(number, name, e);
    }
}

} // namespace

int main(int argc, char **argv)
{
    const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "skypattern_acceptance";
    fs::remove_all(root);
    spdlog::set_level(spdlog::level::warn);
    Reporter rep;
    double t = 0.0;

    guarded(rep, 1, "FSPL correctness", [&] { rep.line(1, "FSPL correctness", rep.timed(fspl_correctness, t), t); });
    guarded(rep, 2, "Angle identities", [&] { rep.line(2, "Angle identities", rep.timed(angle_identities, t), t, 1.0); });
    guarded(rep, 3, "Completion oracle",
            [&] { rep.line(3, "Completion oracle", rep.timed(completion_oracle, t), t, 5.0); });

    Inputs in;
    bool have_runs = false;
    guarded(rep, 4, "Scenario inputs", [&] {
        in = write_inputs(root / "inputs");
        have_runs = true;
    });

    const auto scenarios = [&](const fs::path &run, bool report) {
        guarded(rep, 4, "Noise-free round trip", [&] {
            const Scenario4 s = rep.timed([&] { return run_round_trip(in, run / "c4"); }, t);
            if (report)
                rep.line(4, "Noise-free round trip", check_round_trip(s), t, 10.0);
        });
        guarded(rep, 5, "Noisy estimator consistency", [&] {
            const LearnResult l = rep.timed([&] { return run_noisy(in, run / "c5"); }, t);
            if (report)
                rep.line(5, "Noisy estimator consistency", check_noisy(in, run / "c5", l), t, 30.0);
        });
        guarded(rep, 6, "Learned vs anechoic directionality", [&] {
            const EvaluateResult r = rep.timed([&] { return run_mismatch(in, run / "c6"); }, t);
            if (report)
                rep.line(6, "Learned vs anechoic directionality", check_mismatch(r, run / "c6"), t);
        });
    };

    if (have_runs)
    {
        scenarios(root / "run1", true);
        guarded(rep, 7, "Arithmetic identity",
                [&] { rep.line(7, "Arithmetic identity", check_identity(in, root / "run1")); });
        guarded(rep, 8, "Determinism", [&] {
            scenarios(root / "run2", false);
            rep.line(8, "Determinism", check_determinism(root / "run1", root / "run2"));
        });
    }

    std::printf("%s: %d criteria failed\n", rep.failures ? "FAILED" : "OK", rep.failures);
    return rep.failures ? 1 : 0;
}
