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


#include "skypattern/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <json.hpp>

#include "skypattern/dataio.hpp"
#include "skypattern/error.hpp"
#include "skypattern/hash.hpp"
#include "skypattern/station.hpp"

namespace skypattern
{

namespace
{

using ojson = nlohmann::ordered_json;

class Manifest
{
  public:
    explicit Manifest(std::string subcommand, fs::path out_dir) : out_dir_(std::move(out_dir))
    {
        json_["tool"] = "skypattern";
        json_["version"] = std::string(kToolVersion);
        json_["subcommand"] = std::move(subcommand);
        json_["inputs"] = ojson::array();
        json_["parameters"] = ojson::object();
        json_["outputs"] = ojson::array();
        std::error_code ec;
        fs::create_directories(out_dir_, ec);
        if (ec)
            throw Error(ErrorCode::IoError, out_dir_.string() + ": cannot create output directory");
    }

    /// Records an input file and returns a provenance line for embedding in outputs.
    std::string input(const std::string &role, const fs::path &path)
    {
        const std::string hash = sha256_file(path);
        json_["inputs"].push_back(
            {{"role", role}, {"path", fs::absolute(path).lexically_normal().generic_string()}, {"sha256", hash}});
        provenance_.push_back("input " + role + " " + path.filename().string() + " sha256=" + hash);
        return provenance_.back();
    }

    ojson &parameters() { return json_["parameters"]; }
    ojson &notes() { return json_["notes"]; }
    const fs::path &dir() const { return out_dir_; }

    std::vector<std::string> provenance() const
    {
        std::vector<std::string> lines{"skypattern " + std::string(kToolVersion)};
        lines.insert(lines.end(), provenance_.begin(), provenance_.end());
        return lines;
    }

    void output(const fs::path &path)
    {
        json_["outputs"].push_back({{"path", fs::relative(path, out_dir_).generic_string()}, {"sha256", sha256_file(path)}});
    }

    void write()
    {
        write_text_atomic(out_dir_ / "manifest.json", json_.dump(2) + "\n");
    }

  private:
    fs::path out_dir_;
    ojson json_;
    std::vector<std::string> provenance_;
};

std::string variance_grid_csv(const PatternGrid &grid)
{
    std::string out = "az_deg,el_deg,count,variance_db2\n";
    for (std::size_t i = 0; i < grid.n_az(); ++i)
        for (std::size_t j = 0; j < grid.n_el(); ++j)
        {
            out += format_double(grid.az_center(i)) + "," + format_double(grid.el_center(j)) + "," +
                   std::to_string(grid.count(i, j)) + ",";
            if (const auto &v = grid.variance(i, j))
                out += format_double(*v);
            out += '\n';
        }
    return out;
}

struct LoadedLog
{
    std::vector<FlightSample> accepted;
    std::size_t rejected = 0;
    std::string rejection_csv;
};

/// Reads a log and drops rows that fail parsing or the fixed-orientation check.
LoadedLog load_log(const fs::path &path, const GroundStation &station, double orientation_tol_deg)
{
    const FlightLog log = read_flight_log(path);
    for (const auto &w : log.warnings)
        spdlog::warn("{}: {}", path.string(), w);

    LoadedLog out;
    const std::string source = path.filename().string();
    for (const LogRejection &r : log.rejections)
        out.rejection_csv += source + ",parse," + std::to_string(r.line) + "," + r.reason + "\n";

    OrientationPartition part = validate_fixed_orientation(log.samples, station.expected_uav_yaw, orientation_tol_deg);
    for (const RejectedSample &r : part.rejected)
    {
        std::string reasons;
        for (OrientationReject why : r.reasons)
            reasons += (reasons.empty() ? "" : ";") + std::string(orientation_reject_name(why));
        out.rejection_csv += source + ",orientation," + std::to_string(r.index) + "," + reasons + "\n";
    }
    out.rejected = log.rejections.size() + part.rejected.size();
    out.accepted = std::move(part.accepted);
    spdlog::info("{}: {} samples accepted, {} rejected", path.string(), out.accepted.size(), out.rejected);
    return out;
}

void write_output(Manifest &m, const std::string &name, const std::string &content)
{
    write_text_atomic(m.dir() / name, content);
    m.output(m.dir() / name);
}

PatternGrid require_complete(const fs::path &path)
{
    PatternGrid grid = read_pattern(path);
    if (!grid.is_complete())
        throw Error(ErrorCode::IncompleteGrid, path.string() + " has " + std::to_string(grid.missing_count()) +
                                                   " missing cells; run `skypattern complete --pattern " +
                                                   path.string() + "` first");
    return grid;
}

EvaluateResult predict_and_report(const EvaluateOptions &o, bool full)
{
    Manifest m(full ? "evaluate" : "predict", o.out_dir);
    m.input("log", o.log);
    m.input("station", o.station);
    m.input("grid", o.grid);
    m.parameters()["el_bin_deg"] = o.el_bin_deg;
    m.parameters()["orientation_tol_deg"] = o.orientation_tol_deg;
    m.parameters()["baseline"] = o.baseline;
    m.parameters()["test_label"] = o.test_label;
    m.parameters()["train_label"] = o.train_label;

    const GroundStation station = read_station_config(o.station);
    const PatternGrid g_com = require_complete(o.grid);

    std::optional<PatternGrid> g_uav, g_gs;
    if (o.baseline)
    {
        const auto uav_path = o.uav_pattern ? o.uav_pattern : station.anechoic_uav_pattern;
        const auto gs_path = o.gs_pattern ? o.gs_pattern : station.anechoic_gs_pattern;
        if (!uav_path)
            throw Error(ErrorCode::MissingField, "anechoic_uav_pattern (baseline needs --uav-pattern or a station reference)");
        if (!gs_path)
            throw Error(ErrorCode::MissingField, "anechoic_gs_pattern (baseline needs --gs-pattern or a station reference)");
        m.input("uav_pattern", *uav_path);
        m.input("gs_pattern", *gs_path);
        g_uav = load_anechoic(*uav_path);
        g_gs = load_anechoic(*gs_path);
    }

    const LoadedLog test = load_log(o.log, station, o.orientation_tol_deg);
    if (test.accepted.empty())
        throw Error(ErrorCode::NoAcceptedSamples, o.log.string() + ": no test sample passed validation");

    EvaluateResult result;
    result.rejected = test.rejected;
    result.combined = evaluate(test.accepted, station, Predictor::combined(g_com), o.el_bin_deg, o.orientation_tol_deg);
    write_output(m, "residuals_combined.csv", format_residuals(result.combined.residuals));
    if (o.baseline)
    {
        result.baseline =
            evaluate(test.accepted, station, Predictor::baseline(*g_uav, *g_gs), o.el_bin_deg, o.orientation_tol_deg);
        write_output(m, "residuals_baseline.csv", format_residuals(result.baseline->residuals));
    }

    if (full)
    {
        write_output(m, "report_combined.json", format_report(result.combined));
        std::vector<NamedReport> named{{"learned", &result.combined}};
        if (result.baseline)
        {
            write_output(m, "report_baseline.json", format_report(*result.baseline));
            result.comparison = compare(result.combined, *result.baseline, "learned", "anechoic");
            write_output(m, "compare.csv", format_comparison(*result.comparison));
            const double delta = result.combined.mae_db - result.baseline->mae_db;
            write_output(m, "table.csv",
                         "test,train,mae_anechoic_db,mae_learned_db,delta_db\n" + o.test_label + "," + o.train_label +
                             "," + format_double(result.baseline->mae_db) + "," +
                             format_double(result.combined.mae_db) + "," + format_double(delta) + "\n");
            named.push_back({"anechoic", &*result.baseline});
        }
        for (const fs::path &p : render_plots(named, m.dir() / "plots", m.provenance()))
            m.output(p);
        spdlog::info("learned MAE {:.3f} dB{}", result.combined.mae_db,
                     result.baseline ? fmt::format(", anechoic MAE {:.3f} dB", result.baseline->mae_db) : "");
    }
    m.notes()["test_samples"] = result.combined.n_samples;
    m.notes()["rejected_samples"] = result.rejected;
    m.write();
    return result;
}

} // namespace

std::vector<FlightSample> run_simulate(const SimulateOptions &o)
{
    Manifest m("simulate", o.out_dir);
    m.input("trajectory", o.trajectory);
    m.input("station", o.station);

    TrajectorySpec spec = parse_trajectory_spec(read_text_file(o.trajectory));
    spec.rng_seed = o.seed;
    const GroundStation station = read_station_config(o.station);

    auto &p = m.parameters();
    p["seed"] = o.seed;
    p["noise_sigma_db"] = o.noise_sigma_db;
    std::optional<TruthPattern> truth;
    if (o.truth_pattern)
    {
        m.input("truth_pattern", *o.truth_pattern);
        truth.emplace(read_pattern(*o.truth_pattern));
    }
    else
    {
        p["truth"] = {{"g0_db", o.parametric.g0_db}, {"g1_db", o.parametric.g1_db}, {"exponent", o.parametric.exponent}};
        truth.emplace(o.parametric);
    }

    std::vector<FlightSample> samples = generate_flight(spec, station, *truth, o.noise_sigma_db);
    write_output(m, "flight.csv", format_flight_log(samples));
    m.notes()["samples"] = samples.size();
    m.write();
    spdlog::info("simulated {} samples ({})", samples.size(), trajectory_kind_name(spec.kind));
    return samples;
}

LearnResult run_learn(const LearnOptions &o)
{
    if (o.logs.empty())
        throw Error(ErrorCode::InvalidArgument, "learn needs at least one flight log");

    Manifest m("learn", o.out_dir);
    for (const fs::path &log : o.logs)
        m.input("log", log);
    m.input("station", o.station);
    auto &p = m.parameters();
    p["az_bin_deg"] = o.az_bin_deg;
    p["el_bin_deg"] = o.el_bin_deg;
    p["k_min"] = o.k_min;
    p["tol_db"] = o.tol_db;
    p["max_iters"] = o.max_iters;
    p["orientation_tol_deg"] = o.orientation_tol_deg;

    const GroundStation station = read_station_config(o.station);

    LearnResult result;
    std::vector<FlightSample> accepted;
    std::string rejections = "source,kind,location,reason\n";
    for (const fs::path &path : o.logs)
    {
        LoadedLog log = load_log(path, station, o.orientation_tol_deg);
        accepted.insert(accepted.end(), log.accepted.begin(), log.accepted.end());
        rejections += log.rejection_csv;
        result.rejected += log.rejected;
    }
    if (accepted.empty())
        throw Error(ErrorCode::NoAcceptedSamples, "no flight sample passed parsing and orientation validation");

    const ObservationSet obs = extract_observations(accepted, station, o.orientation_tol_deg);
    for (const SampleFailure &f : obs.failures)
        rejections += "<merged>,geometry," + std::to_string(f.index) + "," + f.reason + "\n";
    result.accepted = obs.observations.size();
    result.rejected += obs.failures.size();
    if (obs.observations.empty())
        throw Error(ErrorCode::NoAcceptedSamples, "no flight sample produced a usable link geometry");

    result.raw = accumulate(obs.observations, o.az_bin_deg, o.el_bin_deg);
    result.raw.metadata = {station.frequency, station.label.empty() ? "learned" : station.label};
    result.observed = apply_min_count(result.raw, o.k_min);
    result.completion = complete_grid(result.observed, o.tol_db, o.max_iters);
    if (!result.completion.converged)
        spdlog::warn("completion stopped after {} sweeps without converging (last update {:.3g} dB)",
                     result.completion.iterations, result.completion.final_update);

    write_output(m, "pattern_raw.csv", format_pattern(result.raw));
    write_output(m, "pattern_observed.csv", format_pattern(result.observed));
    write_output(m, "pattern_completed.csv", format_pattern(result.completion.grid));
    write_output(m, "variance_grid.csv", variance_grid_csv(result.raw));
    write_output(m, "rejections.csv", rejections);

    auto &n = m.notes();
    n["accepted_samples"] = result.accepted;
    n["rejected_samples"] = result.rejected;
    n["observed_cells"] = result.observed.size() - result.observed.missing_count();
    n["completion_converged"] = result.completion.converged;
    n["completion_iterations"] = result.completion.iterations;
    m.write();
    spdlog::info("learned pattern from {} samples; {} of {} cells observed", result.accepted,
                 result.observed.size() - result.observed.missing_count(), result.observed.size());
    return result;
}

CompletionResult run_complete(const CompleteOptions &o)
{
    Manifest m("complete", o.out_dir);
    m.input("pattern", o.pattern);
    m.parameters()["tol_db"] = o.tol_db;
    m.parameters()["max_iters"] = o.max_iters;

    CompletionResult result = complete_grid(read_pattern(o.pattern), o.tol_db, o.max_iters);
    write_output(m, "pattern_completed.csv", format_pattern(result.grid));
    m.notes()["completion_converged"] = result.converged;
    m.notes()["completion_iterations"] = result.iterations;
    m.write();
    return result;
}

EvaluateResult run_predict(const EvaluateOptions &options)
{
    return predict_and_report(options, false);
}

EvaluateResult run_evaluate(const EvaluateOptions &options)
{
    return predict_and_report(options, true);
}

void run_report(const ReportOptions &o)
{
    if (o.reports.empty() || o.reports.size() != o.residuals.size())
        throw Error(ErrorCode::InvalidArgument, "report needs matching --report and --residuals pairs");
    if (o.reports.size() > 2)
        throw Error(ErrorCode::InvalidArgument, "report accepts at most two predictors");

    Manifest m("report", o.out_dir);
    std::vector<EvalReport> reports;
    for (std::size_t k = 0; k < o.reports.size(); ++k)
    {
        m.input("report", o.reports[k]);
        m.input("residuals", o.residuals[k]);
        EvalReport r = read_report(o.reports[k]);
        r.residuals = read_residuals(o.residuals[k]);
        if (r.residuals.size() != r.n_samples)
            throw Error(ErrorCode::MismatchedTestSets,
                        o.residuals[k].string() + " does not match " + o.reports[k].string());
        reports.push_back(std::move(r));
    }

    std::vector<NamedReport> named;
    for (std::size_t k = 0; k < reports.size(); ++k)
        named.push_back({k < o.names.size() ? o.names[k] : "predictor" + std::to_string(k + 1), &reports[k]});
    if (reports.size() == 2)
        write_output(m, "compare.csv", format_comparison(compare(reports[0], reports[1], named[0].name, named[1].name)));
    for (const fs::path &p : render_plots(named, m.dir() / "plots", m.provenance()))
        m.output(p);
    m.write();
}

} // namespace skypattern
