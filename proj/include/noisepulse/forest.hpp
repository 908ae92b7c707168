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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "noisepulse/features.hpp"
#include "noisepulse/rng.hpp"
#include "noisepulse/types.hpp"

// From-scratch random forest over the 15-dimensional feature vectors:
// CART trees split by Gini impurity on a random feature subset, bagged
// over bootstrap resamples, majority vote at prediction time.
//
// Determinism contract: tree t of a forest draws its bootstrap from
// Rng(derive_stream(seed, kBootstrap, t)) and its split features from
// Rng(derive_stream(seed, kTreeSplits, t)). Streams depend only on
// (seed, t), never on thread scheduling, so parallel and serial training
// build bit-identical models, and the first k trees of an n-tree forest
// equal the k-tree forest for the same seed.

namespace noisepulse {

struct ForestHyperparams {
    std::size_t n_trees = 100;
    std::size_t max_depth = 12;
    std::size_t min_samples_split = 2;
    std::size_t features_per_split = 4; // ceil(sqrt(15))
};

// Flat node storage: nodes[0] is the root and children sit after their
// parent in preorder (left subtree complete before right), so the
// serialized array is exactly the in-memory layout. feature_index -1
// marks a leaf; class_counts is the training histogram at the node.
struct TreeNode {
    std::int32_t feature_index = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::array<std::uint32_t, 3> class_counts{ 0, 0, 0 };
};

struct Tree {
    std::vector<TreeNode> nodes;
};

struct ForestModel {
    std::vector<Tree> trees;
    ForestHyperparams hyperparams;
    std::uint64_t seed = 0;
};

struct DatasetSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
    std::vector<std::size_t> test;
    // Set when some stratum was too small to give every partition a row;
    // all rows then land in train and callers should warn.
    bool train_only_fallback = false;
};

struct Prediction {
    BeatClass label = BeatClass::Normal;
    std::array<double, 3> vote_fractions{ 0.0, 0.0, 0.0 };
};

struct MetricsReport {
    // confusion[true class][predicted class], class order Normal/PVC/AF.
    std::array<std::array<std::uint64_t, 3>, 3> confusion{};
    double accuracy = 0.0;
    std::array<double, 3> precision{};
    std::array<double, 3> recall{};
    std::array<double, 3> f1{};
    double macro_f1 = 0.0;
    // Per-class rates against the class support (row sum); tp_rate
    // duplicates recall by definition and fn_rate is its complement.
    std::array<double, 3> tp_rate{};
    std::array<double, 3> fn_rate{};
    // Anomaly screen: PVC and AF collapse into one positive class.
    double sensitivity = 0.0;
    double specificity = 0.0;
    double binary_accuracy = 0.0;
};

struct HyperparamGrid {
    std::vector<std::size_t> n_trees{ 50, 100, 200 };
    std::vector<std::size_t> max_depth{ 4, 8, 12, 16 };
    std::vector<std::size_t> min_samples_split{ 2, 5, 10 };
};

struct GridSearchResult {
    ForestHyperparams best;
    double validation_macro_f1 = 0.0;
};

inline constexpr std::array<double, 3> kDefaultSplitRatios{ 0.70, 0.15, 0.15 };

// Stratified shuffle split: per class the rows are shuffled with
// Rng(derive_stream(seed, kSplit, 0)) and dealt train/validation/test by
// rounded per-stratum counts.
DatasetSplit split_dataset(const std::vector<BeatClass>& labels,
                           const std::array<double, 3>& ratios, std::uint64_t seed);
DatasetSplit split_dataset(const std::vector<BeatClass>& labels, std::uint64_t seed);

// One CART tree on the rows named by row_sample (duplicates welcome, that
// is what a bootstrap is). rng drives only the per-node feature subsets.
Tree train_tree(const std::vector<FeatureVector>& features,
                const std::vector<BeatClass>& labels,
                const std::vector<std::size_t>& row_sample,
                const ForestHyperparams& hp, Rng& rng);

ForestModel train_forest(const std::vector<FeatureVector>& features,
                         const std::vector<BeatClass>& labels,
                         const ForestHyperparams& hp, std::uint64_t seed);

// Plurality vote over the trees' leaf-majority classes; every tie in
// sight (leaf majority, vote plurality) resolves to the lowest class
// index.
Prediction predict(const ForestModel& model, const FeatureVector& fv);

// Exhaustive search over the grid cross product, scored by validation
// macro-F1. Ties prefer fewer trees, then shallower depth, then smaller
// min_samples_split.
GridSearchResult grid_search(const std::vector<FeatureVector>& train_features,
                             const std::vector<BeatClass>& train_labels,
                             const std::vector<FeatureVector>& val_features,
                             const std::vector<BeatClass>& val_labels,
                             const HyperparamGrid& grid, std::uint64_t seed);

MetricsReport evaluate(const ForestModel& model,
                       const std::vector<FeatureVector>& features,
                       const std::vector<BeatClass>& labels);

// All derived metrics from a raw confusion matrix. Empty denominators
// (a class with no support or no predictions) score 0, not NaN.
MetricsReport metrics_from_confusion(
    const std::array<std::array<std::uint64_t, 3>, 3>& confusion);

// Versioned JSON with preorder tree arrays; loading a document from a
// different format version is an error, not a best effort.
std::string model_to_json(const ForestModel& model);
ForestModel model_from_json(const std::string& text);

std::string metrics_to_json(const MetricsReport& metrics);

} // namespace noisepulse
