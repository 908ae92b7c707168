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

#pragma once

#include <string>

#include "noisepulse/experiment.hpp"

// Run configuration for the CLI. The file format is flat `section.key =
// value` lines (diff-friendly, no nesting):
//
//   dataset.n_segments = 10000
//   noise.target_snr_db = 2.5
//   ml.grid_trees = 50,100,200
//   puf.n_devices = 1000
//   output.dir = ./out
//
// `#` starts a comment, blank lines are skipped, and unknown keys are
// errors so typos cannot silently fall back to defaults. Every key is
// optional; the defaults reproduce the full evaluation.

namespace noisepulse {

struct ExperimentConfig {
    MlExperimentConfig ml;
    PufExperimentConfig puf;
    std::string output_dir = "./out";
};

// Parses config text (parse_config) or a file (load_config). Throws
// ParameterError on unknown keys, malformed lines or unparseable values;
// load_config throws IoError naming the path when it cannot be read.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// The file that reproduces this config: every key the parser accepts,
// with the config's values. Round-trips any config the parser itself
// produced (the file format carries one shared seed, so hand-built
// configs with diverging ml/puf seeds cannot survive the trip).
std::string render_config(const ExperimentConfig& config);

// One master seed feeding both experiments, as the CLI's --seed does.
void apply_seed(ExperimentConfig& config, std::uint64_t seed);

} // namespace noisepulse
