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
#include <vector>

#include "noisepulse/config.hpp"
#include "noisepulse/spectral.hpp"

// Run artifacts. run_report.json is the versioned machine-readable
// record; everything in it is either a module output, the config echo,
// or a static modeled constant whose provenance the schema labels.
//
// Byte stability: two runs with the same config and seed write
// byte-identical run_report.json and plots. Doubles are rounded to 1e-9
// before serialization and maps serialize sorted, so float noise or
// iteration order can never leak into the bytes. Wall-clock timings are
// real measurements that differ run to run, which is why they live in a
// timings.json sidecar instead of the report.

namespace noisepulse {

// Static power and latency model of the target device. These echo
// datasheet-style budget figures; the simulation cannot measure them,
// and every output that carries them says "modeled, not measured".
struct PowerLedger {
    double puf_uw = 5.0;
    double ml_inference_uw = 30.0;
    double noise_processing_uw = 15.0;
    double feature_extraction_ms = 6.0;
    double classification_ms = 4.0;

    double total_power_uw() const
    {
        return puf_uw + ml_inference_uw + noise_processing_uw;
    }
    double total_latency_ms() const
    {
        return feature_extraction_ms + classification_ms;
    }
};

// Published comparison points rendered into the report verbatim, never
// computed. Values are strings because the sources quote ranges and
// not-applicable cells.
struct LiteratureRow {
    std::string method;
    std::string accuracy_pct;
    std::string power_uw;
    std::string keygen_time_ms;
};

const std::vector<LiteratureRow>& literature_rows();

struct RunTimings {
    double ml_seconds = 0.0;
    double puf_seconds = 0.0;
    double total_seconds = 0.0;
};

struct RunReport {
    ExperimentConfig config;
    // Either experiment may be absent (subcommands run one side):
    // ml.per_seed.empty() and puf.stats.n_devices == 0 mark the gaps.
    MlExperimentResult ml;
    PufExperimentResult puf;
    // Exemplar spectra of one clean segment and its noisy counterpart,
    // for the PSD plot and csv pair.
    PsdEstimate psd_clean;
    PsdEstimate psd_noisy;
    PowerLedger power;
    RunTimings timings;
};

// Fills psd_clean/psd_noisy from dataset segment 0 under the config's
// noise settings.
void attach_exemplar_psd(RunReport& report);

enum class ReportFormat { Json, CsvBundle };

// Json writes run_report.json, puf_stats.json, model.json (each section
// only when present) and the timings.json sidecar. CsvBundle writes
// report_per_seed.csv, power_ledger.csv, literature.csv and psd.csv.
// The directory must already exist.
void emit_report(const RunReport& report, const std::string& dir,
                 ReportFormat format);

// Self-contained SVGs under <dir>/plots plus a manifest.json listing
// what was drawn and why anything was skipped.
void emit_plots(const RunReport& report, const std::string& dir);

// Parses a run_report.json produced by emit_report back into the fields
// the renderers need (config echo, aggregates, spectra, PUF stats), so
// `report` can re-render artifacts without re-running experiments.
// Per-seed model internals are not round-tripped.
RunReport load_report(const std::string& path);

} // namespace noisepulse
