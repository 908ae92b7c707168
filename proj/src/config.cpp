/*
 * Copyright 2026 The noisepulse Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "noisepulse/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "noisepulse/errors.hpp"

namespace noisepulse {

namespace {

std::string trim(const std::string& s)
{
    const std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value)
{
    try {
        std::size_t pos = 0;
        const double parsed = std::stod(value, &pos);
        if (pos == value.size())
            return parsed;
    } catch (const std::exception&) {
    }
    throw ParameterError("config: " + key + " expects a number, got '" +
                         value + "'");
}

std::uint64_t parse_u64(const std::string& key, const std::string& value)
{
    try {
        std::size_t pos = 0;
        const unsigned long long parsed = std::stoull(value, &pos);
        if (pos == value.size() && value[0] != '-')
            return parsed;
    } catch (const std::exception&) {
    }
    throw ParameterError("config: " + key +
                         " expects a non-negative integer, got '" + value +
                         "'");
}

std::vector<std::string> split_commas(const std::string& value)
{
    std::vector<std::string> parts;
    std::string part;
    std::istringstream stream(value);
    while (std::getline(stream, part, ','))
        parts.push_back(trim(part));
    return parts;
}

std::vector<std::size_t> parse_size_list(const std::string& key,
                                         const std::string& value)
{
    std::vector<std::size_t> out;
    for (const std::string& part : split_commas(value))
        out.push_back(parse_u64(key, part));
    if (out.empty())
        throw ParameterError("config: " + key + " expects a list");
    return out;
}

// Shortest decimal that parses back to the same double.
std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    if (std::stod(buf) == v)
        return buf;
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key,
                                  const std::string& value)>;

const std::map<std::string, Setter>& key_table()
{
    static const std::map<std::string, Setter> table = {
        { "dataset.n_segments",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.ml.n_segments = parse_u64(k, v);
          } },
        { "dataset.anomaly_fraction",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.ml.anomaly_fraction = parse_double(k, v);
          } },
        { "dataset.duration_s",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.ml.duration_s = parse_double(k, v);
          } },
        { "dataset.seed",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              apply_seed(c, parse_u64(k, v));
          } },
        { "noise.std_mv",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.ml.noise_std = parse_double(k, v);
          } },
        { "noise.target_snr_db",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.ml.target_snr_db = parse_double(k, v);
              c.ml.noise_std = -1.0;
          } },
        { "ml.grid_trees",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.ml.grid.n_trees = parse_size_list(k, v);
          } },
        { "ml.grid_depths",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.ml.grid.max_depth = parse_size_list(k, v);
          } },
        { "ml.grid_min_split",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.ml.grid.min_samples_split = parse_size_list(k, v);
          } },
        { "ml.split",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              const std::vector<std::string> parts = split_commas(v);
              if (parts.size() != 3)
                  throw ParameterError(
                      "config: ml.split expects train,validation,test");
              for (std::size_t i = 0; i < 3; ++i)
                  c.ml.split_ratios[i] = parse_double(k, parts[i]);
          } },
        { "ml.n_seeds",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.ml.n_seeds = parse_u64(k, v);
          } },
        { "puf.n_devices",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.puf.n_devices = parse_u64(k, v);
          } },
        { "puf.n_trials",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.puf.n_trials = parse_u64(k, v);
          } },
        { "puf.nominal_freq_hz",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.puf.population.nominal_freq_hz = parse_double(k, v);
          } },
        { "puf.sigma_process_hz",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.puf.population.sigma_process_hz = parse_double(k, v);
          } },
        { "puf.sigma_meas_hz",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.puf.population.sigma_meas_hz = parse_double(k, v);
          } },
        { "puf.temp_coeff_mean_hz_per_c",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.puf.population.temp_coeff_mean_hz_per_c = parse_double(k, v);
          } },
        { "puf.temp_coeff_spread",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.puf.population.temp_coeff_spread = parse_double(k, v);
          } },
        { "puf.volt_coeff_mean_hz_per_vfrac",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.puf.population.volt_coeff_mean_hz_per_vfrac =
                  parse_double(k, v);
          } },
        { "puf.volt_coeff_spread",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.puf.population.volt_coeff_spread = parse_double(k, v);
          } },
        { "puf.temp_range_c",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.puf.envelope.temp_range_c = parse_double(k, v);
          } },
        { "puf.volt_range_frac",
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.puf.envelope.volt_range_frac = parse_double(k, v);
          } },
        { "output.dir",
          [](ExperimentConfig& c, const std::string&, const std::string& v) {
              c.output_dir = v;
          } },
    };
    return table;
}

} // namespace

ExperimentConfig parse_config(const std::string& text)
{
    ExperimentConfig config;
    std::istringstream stream(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        const std::string line =
            trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config: line " + std::to_string(line_no) +
                                 " is not 'key = value': '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParameterError("config: line " + std::to_string(line_no) +
                                 " has an empty key or value");

        const auto it = key_table().find(key);
        if (it == key_table().end())
            throw ParameterError("config: unknown key '" + key + "' on line " +
                                 std::to_string(line_no));
        // Duplicate keys are legal; the later assignment wins, which is
        // what copy-paste overrides at the end of a file expect.
        it->second(config, key, value);
    }
    return config;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw IoError("config: cannot read '" + path + "'");
    std::ostringstream text;
    text << file.rdbuf();
    return parse_config(text.str());
}

std::string render_config(const ExperimentConfig& config)
{
    auto join = [](const std::vector<std::size_t>& values) {
        std::string out;
        for (std::size_t v : values) {
            if (!out.empty())
                out += ",";
            out += std::to_string(v);
        }
        return out;
    };

    std::ostringstream out;
    out << "dataset.n_segments = " << config.ml.n_segments << "\n";
    out << "dataset.anomaly_fraction = "
        << format_double(config.ml.anomaly_fraction) << "\n";
    out << "dataset.duration_s = " << format_double(config.ml.duration_s)
        << "\n";
    out << "dataset.seed = " << config.ml.seed << "\n";
    if (config.ml.noise_std < 0.0)
        out << "noise.target_snr_db = "
            << format_double(config.ml.target_snr_db) << "\n";
    else
        out << "noise.std_mv = " << format_double(config.ml.noise_std) << "\n";
    out << "ml.grid_trees = " << join(config.ml.grid.n_trees) << "\n";
    out << "ml.grid_depths = " << join(config.ml.grid.max_depth) << "\n";
    out << "ml.grid_min_split = " << join(config.ml.grid.min_samples_split)
        << "\n";
    out << "ml.split = " << format_double(config.ml.split_ratios[0]) << ","
        << format_double(config.ml.split_ratios[1]) << ","
        << format_double(config.ml.split_ratios[2]) << "\n";
    out << "ml.n_seeds = " << config.ml.n_seeds << "\n";
    out << "puf.n_devices = " << config.puf.n_devices << "\n";
    out << "puf.n_trials = " << config.puf.n_trials << "\n";
    out << "puf.nominal_freq_hz = "
        << format_double(config.puf.population.nominal_freq_hz) << "\n";
    out << "puf.sigma_process_hz = "
        << format_double(config.puf.population.sigma_process_hz) << "\n";
    out << "puf.sigma_meas_hz = "
        << format_double(config.puf.population.sigma_meas_hz) << "\n";
    out << "puf.temp_coeff_mean_hz_per_c = "
        << format_double(config.puf.population.temp_coeff_mean_hz_per_c)
        << "\n";
    out << "puf.temp_coeff_spread = "
        << format_double(config.puf.population.temp_coeff_spread) << "\n";
    out << "puf.volt_coeff_mean_hz_per_vfrac = "
        << format_double(config.puf.population.volt_coeff_mean_hz_per_vfrac)
        << "\n";
    out << "puf.volt_coeff_spread = "
        << format_double(config.puf.population.volt_coeff_spread) << "\n";
    out << "puf.temp_range_c = "
        << format_double(config.puf.envelope.temp_range_c) << "\n";
    out << "puf.volt_range_frac = "
        << format_double(config.puf.envelope.volt_range_frac) << "\n";
    out << "output.dir = " << config.output_dir << "\n";
    return out.str();
}

void apply_seed(ExperimentConfig& config, std::uint64_t seed)
{
    config.ml.seed = seed;
    config.puf.seed = seed;
}

} // namespace noisepulse
