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


#include "skypattern/dataio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "skypattern/error.hpp"

namespace skypattern
{

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace
{

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size())
    {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }
    return lines;
}

struct Field
{
    std::string_view text;
    std::size_t column; // 1-based
};

std::vector<Field> split_fields(std::string_view line)
{
    std::vector<Field> out;
    std::size_t pos = 0;
    while (true)
    {
        const auto comma = line.find(',', pos);
        const auto end = comma == std::string_view::npos ? line.size() : comma;
        out.push_back({trim(line.substr(pos, end - pos)), pos + 1});
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s)
{
    if (s.empty())
        return std::nullopt;
    if (s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

std::optional<std::uint64_t> parse_count(std::string_view s)
{
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

[[noreturn]] void fail_at(ErrorCode code, const std::string &source, std::size_t line, std::size_t column,
                          const std::string &message)
{
    std::ostringstream os;
    os << source << ":" << line << ":" << column << ": " << message;
    throw Error(code, os.str());
}

/// `# key=value` -> (key, value); anything else -> nullopt.
std::optional<std::pair<std::string_view, std::string_view>> parse_meta(std::string_view line)
{
    line = trim(line.substr(1));
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
        return std::nullopt;
    return std::make_pair(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
}

std::string sanitize_label(std::string label)
{
    for (char &c : label)
        if (c == '\n' || c == '\r')
            c = ' ';
    return label;
}

} // namespace

std::string format_double(double value)
{
    if (value == 0.0)
        value = 0.0; // no "-0" in output files
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc())
        throw Error(ErrorCode::InvalidArgument, "number formatting failed");
    return {buf, ptr};
}

std::string read_text_file(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, path.string() + ": cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw Error(ErrorCode::IoError, path.string() + ": read failed");
    return ss.str();
}

void write_text_atomic(const fs::path &path, std::string_view content)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::IoError, path.string() + ": cannot open for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw Error(ErrorCode::IoError, path.string() + ": write failed");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec)
    {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::IoError, path.string() + ": rename failed");
    }
}

// ---------------------------------------------------------------- flight log

FlightLog parse_flight_log(std::string_view text, const std::string &source)
{
    if (trim(text).empty())
        throw Error(ErrorCode::EmptyFile, source + ": flight log is empty");

    FlightLog log;
    const auto lines = split_lines(text);
    std::size_t k = 0;
    for (; k < lines.size(); ++k)
    {
        const std::string_view line = trim(lines[k]);
        if (line.empty())
            continue;
        if (line.front() != '#')
            break;
        if (const auto kv = parse_meta(line); kv && kv->first == "alt_offset_m")
        {
            const auto v = parse_double(kv->second);
            if (!v || !std::isfinite(*v))
                fail_at(ErrorCode::ParseError, source, k + 1, 1, "alt_offset_m is not a finite number");
            log.alt_offset_m = *v;
        }
    }
    if (k == lines.size() || trim(lines[k]) != kFlightLogHeader)
        throw Error(ErrorCode::MissingHeader,
                    source + ": expected header '" + std::string(kFlightLogHeader) + "'");

    static constexpr const char *names[] = {"timestamp_s", "lat_deg",   "lon_deg",  "alt_m",
                                            "yaw_deg",     "pitch_deg", "roll_deg", "rsrp_dbm"};
    std::optional<double> last_time;
    for (++k; k < lines.size(); ++k)
    {
        const std::string_view line = trim(lines[k]);
        if (line.empty() || line.front() == '#')
            continue;
        const std::size_t line_no = k + 1;
        const auto fields = split_fields(line);
        if (fields.size() != 8)
        {
            log.rejections.push_back({line_no, "expected 8 fields, got " + std::to_string(fields.size())});
            continue;
        }

        double v[8];
        std::string reason;
        for (int f = 0; f < 8 && reason.empty(); ++f)
        {
            const auto parsed = parse_double(fields[f].text);
            if (!parsed)
                reason = std::string(names[f]) + " is not a number";
            else if (!std::isfinite(*parsed))
                reason = std::string(names[f]) + " is not finite";
            else
                v[f] = *parsed;
        }
        auto range = [&](int f, double lo, double hi, bool hi_open) {
            if (!reason.empty())
                return;
            if (v[f] < lo || v[f] > hi || (hi_open && v[f] == hi))
            {
                std::ostringstream os;
                os << names[f] << "=" << format_double(v[f]) << " outside [" << lo << ", " << hi
                   << (hi_open ? ")" : "]");
                reason = os.str();
            }
        };
        range(1, -90.0, 90.0, false);
        range(2, -180.0, 180.0, true);
        range(5, -90.0, 90.0, false);
        range(6, -180.0, 180.0, true);
        if (!reason.empty())
        {
            log.rejections.push_back({line_no, reason});
            continue;
        }

        FlightSample s;
        s.timestamp = v[0];
        s.position = {v[1], v[2], v[3] + log.alt_offset_m};
        s.attitude = {wrap_360(v[4]), v[5], v[6]};
        s.rsrp = v[7];
        if (last_time && s.timestamp < *last_time)
            log.warnings.push_back("NonMonotoneTimestamps: line " + std::to_string(line_no) + " goes back in time");
        last_time = s.timestamp;
        log.samples.push_back(s);
    }
    return log;
}

FlightLog read_flight_log(const fs::path &path)
{
    return parse_flight_log(read_text_file(path), path.string());
}

std::string format_flight_log(const std::vector<FlightSample> &samples)
{
    std::string out(kFlightLogHeader);
    out += '\n';
    for (const FlightSample &s : samples)
    {
        for (double v : {s.timestamp, s.position.latitude, s.position.longitude, s.position.altitude, s.attitude.yaw,
                         s.attitude.pitch, s.attitude.roll})
        {
            out += format_double(v);
            out += ',';
        }
        out += format_double(s.rsrp);
        out += '\n';
    }
    return out;
}

void write_flight_log(const std::vector<FlightSample> &samples, const fs::path &path)
{
    write_text_atomic(path, format_flight_log(samples));
}

// ---------------------------------------------------------------- station config

GroundStation parse_station_config(std::string_view json_text, const fs::path &base_dir)
{
    ojson j;
    try
    {
        j = ojson::parse(json_text);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw Error(ErrorCode::ParseError, std::string("station config: ") + e.what());
    }
    if (!j.is_object())
        throw Error(ErrorCode::ParseError, "station config: top level must be an object");

    auto lookup = [](const ojson &obj, const std::string &key, const std::string &name) -> const ojson * {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null())
            return nullptr;
        if (!it->is_number())
            throw Error(ErrorCode::ValueOutOfRange, name + ": expected a number");
        return &*it;
    };
    auto required = [&](const ojson &obj, const std::string &key, const std::string &name) {
        const ojson *v = lookup(obj, key, name);
        if (!v)
            throw Error(ErrorCode::MissingField, name);
        return v->get<double>();
    };
    auto optional = [&](const std::string &key, double fallback) {
        const ojson *v = lookup(j, key, key);
        return v ? v->get<double>() : fallback;
    };
    auto out_of_range = [](const std::string &name, const std::string &why) {
        throw Error(ErrorCode::ValueOutOfRange, name + ": " + why);
    };

    auto pos = j.find("position");
    if (pos == j.end())
        throw Error(ErrorCode::MissingField, "position");
    if (!pos->is_object())
        throw Error(ErrorCode::ValueOutOfRange, "position: expected an object");

    GroundStation st;
    st.position.latitude = required(*pos, "lat_deg", "position.lat_deg");
    st.position.longitude = required(*pos, "lon_deg", "position.lon_deg");
    st.position.altitude = required(*pos, "alt_m", "position.alt_m");
    st.tx_power = required(j, "tx_power_dbm", "tx_power_dbm");
    st.frequency = required(j, "frequency_hz", "frequency_hz");
    st.boresight_azimuth = optional("boresight_azimuth_deg", 0.0);
    st.expected_uav_yaw = optional("expected_uav_yaw_deg", 0.0);

    if (st.position.latitude < -90.0 || st.position.latitude > 90.0)
        out_of_range("position.lat_deg", "must be in [-90, 90]");
    if (st.position.longitude < -180.0 || st.position.longitude >= 180.0)
        out_of_range("position.lon_deg", "must be in [-180, 180)");
    if (!std::isfinite(st.tx_power))
        out_of_range("tx_power_dbm", "must be finite");
    if (!(st.frequency > 0.0) || !std::isfinite(st.frequency))
        out_of_range("frequency_hz", "must be > 0");
    if (!(st.boresight_azimuth >= 0.0 && st.boresight_azimuth < 360.0))
        out_of_range("boresight_azimuth_deg", "must be in [0, 360)");
    if (!(st.expected_uav_yaw >= 0.0 && st.expected_uav_yaw < 360.0))
        out_of_range("expected_uav_yaw_deg", "must be in [0, 360)");

    auto pattern_ref = [&](const char *key) -> std::optional<fs::path> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null())
            return std::nullopt;
        if (!it->is_string())
            throw Error(ErrorCode::ValueOutOfRange, std::string(key) + ": expected a path string");
        fs::path p = it->get<std::string>();
        if (p.is_relative() && !base_dir.empty())
            p = base_dir / p;
        return p.lexically_normal();
    };
    st.anechoic_gs_pattern = pattern_ref("anechoic_gs_pattern");
    st.anechoic_uav_pattern = pattern_ref("anechoic_uav_pattern");

    if (auto it = j.find("label"); it != j.end() && !it->is_null())
    {
        if (!it->is_string())
            throw Error(ErrorCode::ValueOutOfRange, "label: expected a string");
        st.label = it->get<std::string>();
    }
    return st;
}

GroundStation read_station_config(const fs::path &path)
{
    try
    {
        return parse_station_config(read_text_file(path), path.parent_path());
    }
    catch (const Error &e)
    {
        if (e.code() == ErrorCode::MissingField || e.code() == ErrorCode::ValueOutOfRange)
            throw;
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

std::string format_station_config(const GroundStation &st)
{
    ojson j;
    j["label"] = st.label;
    j["position"] = {{"lat_deg", st.position.latitude},
                     {"lon_deg", st.position.longitude},
                     {"alt_m", st.position.altitude}};
    j["tx_power_dbm"] = st.tx_power;
    j["frequency_hz"] = st.frequency;
    j["boresight_azimuth_deg"] = st.boresight_azimuth;
    j["expected_uav_yaw_deg"] = st.expected_uav_yaw;
    if (st.anechoic_gs_pattern)
        j["anechoic_gs_pattern"] = st.anechoic_gs_pattern->generic_string();
    if (st.anechoic_uav_pattern)
        j["anechoic_uav_pattern"] = st.anechoic_uav_pattern->generic_string();
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- pattern file

PatternGrid parse_pattern(std::string_view text, const std::string &source)
{
    if (trim(text).empty())
        throw Error(ErrorCode::EmptyFile, source + ": pattern file is empty");

    const auto lines = split_lines(text);
    std::optional<double> az_bin, el_bin;
    PatternMetadata meta;
    std::size_t k = 0;
    for (; k < lines.size(); ++k)
    {
        const std::string_view line = trim(lines[k]);
        if (line.empty())
            continue;
        if (line.front() != '#')
            break;
        const auto kv = parse_meta(line);
        if (!kv)
            continue;
        const auto &[key, value] = *kv;
        if (key == "label")
        {
            meta.label = std::string(value);
            continue;
        }
        std::optional<double> *slot = key == "az_bin_deg" ? &az_bin : key == "el_bin_deg" ? &el_bin : nullptr;
        const auto v = parse_double(value);
        if (key == "frequency_hz" || slot)
        {
            if (!v || !std::isfinite(*v))
                fail_at(ErrorCode::ParseError, source, k + 1, 1, std::string(key) + " is not a finite number");
            if (slot)
                *slot = *v;
            else
                meta.frequency_hz = *v;
        }
    }
    if (!az_bin || !el_bin)
        throw Error(ErrorCode::ParseError, source + ": missing '# az_bin_deg=' or '# el_bin_deg=' metadata");
    if (k == lines.size() || trim(lines[k]) != kPatternHeader)
        throw Error(ErrorCode::MissingHeader, source + ": expected header '" + std::string(kPatternHeader) + "'");

    PatternGrid grid;
    try
    {
        grid = PatternGrid(*az_bin, *el_bin);
    }
    catch (const Error &e)
    {
        throw Error(ErrorCode::GridShapeMismatch, source + ": " + e.what());
    }
    grid.metadata = meta;

    std::vector<bool> seen(grid.size(), false);
    for (++k; k < lines.size(); ++k)
    {
        const std::string_view line = trim(lines[k]);
        if (line.empty())
            continue;
        const std::size_t line_no = k + 1;
        const auto fields = split_fields(line);
        if (fields.size() != 5)
            fail_at(ErrorCode::ParseError, source, line_no, 1,
                    "expected 5 fields, got " + std::to_string(fields.size()));

        const auto az = parse_double(fields[0].text);
        const auto el = parse_double(fields[1].text);
        if (!az || !std::isfinite(*az))
            fail_at(ErrorCode::ParseError, source, line_no, fields[0].column, "az_deg is not a finite number");
        if (!el || !std::isfinite(*el))
            fail_at(ErrorCode::ParseError, source, line_no, fields[1].column, "el_deg is not a finite number");

        const std::size_t i = grid.az_index(*az), j = grid.el_index(*el);
        if (std::abs(*az - grid.az_center(i)) > 1e-6 || std::abs(*el - grid.el_center(j)) > 1e-6 || *el < -90.0 ||
            *el > 90.0)
            fail_at(ErrorCode::GridShapeMismatch, source, line_no, fields[0].column,
                    "(" + std::string(fields[0].text) + ", " + std::string(fields[1].text) +
                        ") is not a bin center of the declared grid");
        if (seen[i * grid.n_el() + j])
            fail_at(ErrorCode::ParseError, source, line_no, fields[0].column, "duplicate cell");
        seen[i * grid.n_el() + j] = true;

        if (!fields[2].text.empty())
        {
            const auto g = parse_double(fields[2].text);
            if (!g || !std::isfinite(*g))
                fail_at(ErrorCode::ParseError, source, line_no, fields[2].column, "gain_db is not a finite number");
            grid.set_gain(i, j, *g);
        }
        const auto n = parse_count(fields[3].text);
        if (!n)
            fail_at(ErrorCode::ParseError, source, line_no, fields[3].column, "count is not a non-negative integer");
        grid.set_count(i, j, *n);
        if (!fields[4].text.empty())
        {
            const auto v = parse_double(fields[4].text);
            if (!v || !std::isfinite(*v) || *v < 0.0)
                fail_at(ErrorCode::ParseError, source, line_no, fields[4].column,
                        "variance_db2 is not a non-negative number");
            grid.set_variance(i, j, *v);
        }
    }

    const auto missing = std::count(seen.begin(), seen.end(), false);
    if (missing > 0)
        throw Error(ErrorCode::GridShapeMismatch,
                    source + ": " + std::to_string(missing) + " cell(s) absent; rows must tile 360 x 180 deg");
    return grid;
}

PatternGrid read_pattern(const fs::path &path)
{
    return parse_pattern(read_text_file(path), path.string());
}

std::string format_pattern(const PatternGrid &grid)
{
    std::string out;
    out += "# frequency_hz=" + format_double(grid.metadata.frequency_hz) + "\n";
    out += "# az_bin_deg=" + format_double(grid.az_bin_deg()) + "\n";
    out += "# el_bin_deg=" + format_double(grid.el_bin_deg()) + "\n";
    out += "# label=" + sanitize_label(grid.metadata.label) + "\n";
    out += kPatternHeader;
    out += '\n';
    for (std::size_t i = 0; i < grid.n_az(); ++i)
        for (std::size_t j = 0; j < grid.n_el(); ++j)
        {
            out += format_double(grid.az_center(i));
            out += ',';
            out += format_double(grid.el_center(j));
            out += ',';
            if (const auto &g = grid.gain(i, j))
                out += format_double(*g);
            out += ',';
            out += std::to_string(grid.count(i, j));
            out += ',';
            if (const auto &v = grid.variance(i, j))
                out += format_double(*v);
            out += '\n';
        }
    return out;
}

void write_pattern(const PatternGrid &grid, const fs::path &path)
{
    write_text_atomic(path, format_pattern(grid));
}

// ---------------------------------------------------------------- residuals

std::vector<ResidualRecord> parse_residuals(std::string_view text, const std::string &source)
{
    if (trim(text).empty())
        throw Error(ErrorCode::EmptyFile, source + ": residual file is empty");
    const auto lines = split_lines(text);
    if (trim(lines.front()) != kResidualHeader)
        throw Error(ErrorCode::MissingHeader, source + ": expected header '" + std::string(kResidualHeader) + "'");

    std::vector<ResidualRecord> out;
    for (std::size_t k = 1; k < lines.size(); ++k)
    {
        const std::string_view line = trim(lines[k]);
        if (line.empty())
            continue;
        const auto fields = split_fields(line);
        if (fields.size() != 8)
            fail_at(ErrorCode::ParseError, source, k + 1, 1, "expected 8 fields, got " + std::to_string(fields.size()));
        double v[7];
        for (int f = 0; f < 7; ++f)
        {
            const auto parsed = parse_double(fields[f].text);
            if (!parsed)
                fail_at(ErrorCode::ParseError, source, k + 1, fields[f].column, "not a number");
            v[f] = *parsed;
        }
        out.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], std::string(fields[7].text)});
    }
    return out;
}

std::vector<ResidualRecord> read_residuals(const fs::path &path)
{
    return parse_residuals(read_text_file(path), path.string());
}

std::string format_residuals(const std::vector<ResidualRecord> &residuals)
{
    std::string out(kResidualHeader);
    out += '\n';
    for (const ResidualRecord &r : residuals)
    {
        for (double v : {r.timestamp_s, r.d3d_m, r.phi_u_deg, r.theta_u_deg, r.rsrp_meas_dbm, r.rsrp_pred_dbm,
                         r.abs_err_db})
        {
            out += format_double(v);
            out += ',';
        }
        out += r.predictor;
        out += '\n';
    }
    return out;
}

void write_residuals(const std::vector<ResidualRecord> &residuals, const fs::path &path)
{
    write_text_atomic(path, format_residuals(residuals));
}

// ---------------------------------------------------------------- report

EvalReport parse_report(std::string_view json_text, const std::string &source)
{
    try
    {
        const ojson j = ojson::parse(json_text);
        EvalReport r;
        r.mae_db = j.at("mae_db").get<double>();
        r.rmse_db = j.at("rmse_db").get<double>();
        r.n_samples = j.at("n_samples").get<std::size_t>();
        for (const auto &p : j.at("error_cdf"))
            r.error_cdf.push_back({p.at("abs_err_db").get<double>(), p.at("cum_prob").get<double>()});
        for (const auto &b : j.at("per_elevation"))
        {
            ElevationBin bin;
            bin.el_lo_deg = b.at("el_lo_deg").get<double>();
            bin.el_hi_deg = b.at("el_hi_deg").get<double>();
            if (!b.at("mae_db").is_null())
                bin.mae_db = b.at("mae_db").get<double>();
            bin.density = b.at("density").get<double>();
            r.per_elevation.push_back(bin);
        }
        return r;
    }
    catch (const nlohmann::json::out_of_range &e)
    {
        throw Error(e.id == 403 ? ErrorCode::MissingField : ErrorCode::ParseError, source + ": " + e.what());
    }
    catch (const nlohmann::json::exception &e)
    {
        throw Error(ErrorCode::ParseError, source + ": " + e.what());
    }
}

EvalReport read_report(const fs::path &path)
{
    return parse_report(read_text_file(path), path.string());
}

std::string format_report(const EvalReport &r)
{
    ojson j;
    j["mae_db"] = r.mae_db;
    j["rmse_db"] = r.rmse_db;
    j["n_samples"] = r.n_samples;
    j["error_cdf"] = ojson::array();
    for (const CdfPoint &p : r.error_cdf)
        j["error_cdf"].push_back({{"abs_err_db", p.abs_err_db}, {"cum_prob", p.cum_prob}});
    j["per_elevation"] = ojson::array();
    for (const ElevationBin &b : r.per_elevation)
    {
        ojson e;
        e["el_lo_deg"] = b.el_lo_deg;
        e["el_hi_deg"] = b.el_hi_deg;
        e["mae_db"] = b.mae_db ? ojson(*b.mae_db) : ojson(nullptr);
        e["density"] = b.density;
        j["per_elevation"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

void write_report(const EvalReport &report, const fs::path &path)
{
    write_text_atomic(path, format_report(report));
}

std::string format_comparison(const Comparison &c)
{
    auto opt = [](const std::optional<double> &v) { return v ? format_double(*v) : std::string(); };
    std::string out = "metric,el_lo_deg,el_hi_deg,label_a,value_a,label_b,value_b,delta,winner\n";
    for (const ComparisonRow &row : c.rows)
    {
        const bool binned = row.metric == "elevation_mae_db";
        out += row.metric + ",";
        out += (binned ? format_double(row.el_lo_deg) : std::string()) + ",";
        out += (binned ? format_double(row.el_hi_deg) : std::string()) + ",";
        out += c.label_a + "," + opt(row.a) + "," + c.label_b + "," + opt(row.b) + "," + opt(row.delta) + ",";
        out += winner_name(row.winner);
        out += '\n';
    }
    return out;
}

} // namespace skypattern
