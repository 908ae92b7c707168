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

#include "noisepulse/experiment.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "noisepulse/errors.hpp"
#include "noisepulse/noise.hpp"
#include "noisepulse/parallel.hpp"
#include "noisepulse/stream_tags.hpp"
#include "noisepulse/wavelet.hpp"

namespace noisepulse {

namespace {

void validate(const MlExperimentConfig& c)
{
    if (c.n_segments == 0)
        throw ParameterError("ml experiment: n_segments must be positive");
    if (c.n_seeds == 0)
        throw ParameterError("ml experiment: n_seeds must be positive");
    if (c.noise_std >= 0.0 && !std::isfinite(c.noise_std))
        throw ParameterError("ml experiment: noise_std must be finite");
    // anomaly_fraction, duration_s, grid, ratios and target_snr_db are
    // validated by the modules that consume them.
}

struct ArmMatrices {
    std::vector<FeatureVector> train;
    std::vector<BeatClass> train_labels;
    std::vector<FeatureVector> validation;
    std::vector<BeatClass> validation_labels;
};

ArmMatrices gather(const std::vector<FeatureVector>& features,
                   const std::vector<BeatClass>& labels,
                   const DatasetSplit& split)
{
    ArmMatrices out;
    for (std::size_t i : split.train) {
        out.train.push_back(features[i]);
        out.train_labels.push_back(labels[i]);
    }
    for (std::size_t i : split.validation) {
        out.validation.push_back(features[i]);
        out.validation_labels.push_back(labels[i]);
    }
    return out;
}

MlArmResult run_arm(const ArmMatrices& m,
                    const std::vector<FeatureVector>& test_features,
                    const std::vector<BeatClass>& test_labels,
                    const HyperparamGrid& grid, std::uint64_t seed,
                    std::size_t fallbacks, ForestModel* keep_model)
{
    MlArmResult out;
    const GridSearchResult search =
        grid_search(m.train, m.train_labels, m.validation,
                    m.validation_labels, grid, seed);
    out.best = search.best;
    out.validation_macro_f1 = search.validation_macro_f1;

    ForestModel model = train_forest(m.train, m.train_labels, search.best, seed);
    out.test = evaluate(model, test_features, test_labels);
    out.detector_fallbacks = fallbacks;
    if (keep_model)
        *keep_model = std::move(model);
    return out;
}

} // namespace

bool robust_features(const EcgSignal& signal, FeatureVector& out)
{
    try {
        out = extract_features(signal, false);
        return false;
    } catch (const InsufficientDataError&) {
        out.fill(0.0);
        const std::array<double, kWaveletFeatureCount> wavelet =
            wavelet_features(dwt(signal.samples));
        for (std::size_t i = 0; i + 5 < kFeatureCount; ++i)
            out[5 + i] = wavelet[i];
        return true;
    }
}

MlExperimentResult run_ml_experiment(const MlExperimentConfig& config)
{
    validate(config);

    const std::vector<BeatClass> labels =
        dataset_class_plan(config.n_segments, config.anomaly_fraction);
    const std::size_t n = config.n_segments;

    MlExperimentResult result;
    result.config = config;

    for (std::size_t rep = 0; rep < config.n_seeds; ++rep) {
        const std::uint64_t rep_seed =
            derive_stream(config.seed, stream_tags::kMlSeed, rep);

        std::vector<FeatureVector> augmented(n);
        std::vector<FeatureVector> filtered(n);
        std::vector<std::uint8_t> fell_augmented(n, 0);
        std::vector<std::uint8_t> fell_filtered(n, 0);
        std::vector<std::uint8_t> clamped(n, 0);

        parallel_for(n, [&](std::size_t i) {
            const EcgSignal clean = dataset_segment(config.seed, i, labels[i],
                                                    config.duration_s);
            NoiseSpec spec;
            if (config.noise_std < 0.0) {
                spec = calibrate_noise_for_snr(clean, config.target_snr_db);
                clamped[i] = spec.clamped ? 1 : 0;
            } else {
                spec.std_dev = config.noise_std;
            }
            spec.seed = derive_stream(rep_seed, stream_tags::kNoise, i);

            const EcgSignal noisy = add_noise(clean, spec);
            fell_augmented[i] = robust_features(noisy, augmented[i]) ? 1 : 0;
            fell_filtered[i] =
                robust_features(baseline_filter(noisy), filtered[i]) ? 1 : 0;
        });

        if (rep == 0) {
            result.exemplar_features = augmented;
            result.exemplar_labels = labels;
        }

        const DatasetSplit split =
            split_dataset(labels, config.split_ratios, rep_seed);
        if (split.test.empty())
            throw InsufficientDataError(
                "ml experiment: split produced an empty test partition");

        // The test rows always come from the unfiltered noisy matrix;
        // see the header comment for why the filtered arm is evaluated
        // off-distribution on purpose.
        std::vector<FeatureVector> test_features;
        std::vector<BeatClass> test_labels;
        for (std::size_t i : split.test) {
            test_features.push_back(augmented[i]);
            test_labels.push_back(labels[i]);
        }

        MlSeedResult seed_result;
        seed_result.derived_seed = rep_seed;
        seed_result.clamped_segments =
            std::accumulate(clamped.begin(), clamped.end(), std::size_t{ 0 });
        seed_result.augmented = run_arm(
            gather(augmented, labels, split), test_features, test_labels,
            config.grid, rep_seed,
            std::accumulate(fell_augmented.begin(), fell_augmented.end(),
                            std::size_t{ 0 }),
            rep == 0 ? &result.exemplar_model : nullptr);
        seed_result.filtered = run_arm(
            gather(filtered, labels, split), test_features, test_labels,
            config.grid, rep_seed,
            std::accumulate(fell_filtered.begin(), fell_filtered.end(),
                            std::size_t{ 0 }),
            nullptr);
        result.per_seed.push_back(std::move(seed_result));
    }

    const auto reps = static_cast<double>(config.n_seeds);
    for (const MlSeedResult& s : result.per_seed) {
        result.mean_accuracy_augmented += s.augmented.test.accuracy / reps;
        result.mean_accuracy_filtered += s.filtered.test.accuracy / reps;
        result.mean_macro_f1_augmented += s.augmented.test.macro_f1 / reps;
        result.mean_macro_f1_filtered += s.filtered.test.macro_f1 / reps;
        for (int c = 0; c < 3; ++c)
            result.mean_recall_augmented[c] +=
                s.augmented.test.recall[c] / reps;
    }
    result.accuracy_gap_points = 100.0 * (result.mean_accuracy_augmented -
                                          result.mean_accuracy_filtered);
    return result;
}

PufExperimentResult run_puf_experiment(const PufExperimentConfig& config)
{
    if (config.n_devices < 2)
        throw ParameterError("puf experiment: need at least 2 devices");
    if (config.n_trials < 2)
        throw ParameterError("puf experiment: need at least 2 trials per device");

    const std::size_t n = config.n_devices;
    std::vector<RoDevice> devices(n);
    std::vector<double> device_ber(n);
    std::vector<double> device_stability(n);
    std::vector<std::size_t> device_failures(n);

    parallel_for(n, [&](std::size_t d) {
        devices[d] = sample_device(config.population, d, config.seed);
        const RawResponse reference = nominal_response(devices[d]);
        const Enrollment enrolled = enroll(devices[d], config.seed);

        // One measurement per trial feeds both the raw error statistics
        // and the key reproduction attempt, like a fielded device that
        // reads its oscillators once per boot.
        Rng rng(derive_stream(config.seed, stream_tags::kPufTrial, d));
        std::vector<std::uint8_t> always_matches(kResponseBits, 1);
        double ber_sum = 0.0;
        std::size_t failures = 0;
        for (std::size_t t = 0; t < config.n_trials; ++t) {
            EnvCondition env;
            env.temp_delta_c = rng.uniform(-config.envelope.temp_range_c,
                                           config.envelope.temp_range_c);
            env.volt_delta_frac = rng.uniform(-config.envelope.volt_range_frac,
                                              config.envelope.volt_range_frac);
            const RawResponse trial = measure_response(
                devices[d], env, config.population.sigma_meas_hz, rng);

            ber_sum += fractional_hamming(reference.bits, trial.bits);
            for (std::size_t i = 0; i < kResponseBits; ++i)
                if (trial.bits[i] != reference.bits[i])
                    always_matches[i] = 0;

            const auto key = recover(enrolled.helper, trial.bits);
            if (!key || key->key.secret != enrolled.key.secret)
                ++failures;
        }

        device_ber[d] = ber_sum / static_cast<double>(config.n_trials);
        std::size_t stable = 0;
        for (std::uint8_t m : always_matches)
            stable += m;
        device_stability[d] = static_cast<double>(stable) / kResponseBits;
        device_failures[d] = failures;
    });

    PufExperimentResult result;
    result.config = config;
    result.stats.n_devices = n;
    result.stats.n_trials = config.n_trials;
    result.stats.uniqueness_mean_fractional_hd = uniqueness(devices);
    result.stats.uniqueness_score_pct =
        100.0 *
        (1.0 - std::abs(result.stats.uniqueness_mean_fractional_hd - 0.5) / 0.5);
    for (std::size_t d = 0; d < n; ++d) {
        result.stats.intra_device_ber += device_ber[d] / static_cast<double>(n);
        result.stats.bit_stability +=
            device_stability[d] / static_cast<double>(n);
        result.failed_reproductions += device_failures[d];
    }
    result.total_reproductions = n * config.n_trials;
    result.key_failure_rate = static_cast<double>(result.failed_reproductions) /
                              static_cast<double>(result.total_reproductions);
    return result;
}

} // namespace noisepulse
