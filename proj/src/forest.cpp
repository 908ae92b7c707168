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

#include "noisepulse/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <json.hpp>

#include "noisepulse/errors.hpp"
#include "noisepulse/parallel.hpp"
#include "noisepulse/stream_tags.hpp"

namespace noisepulse {

namespace {

int class_index(BeatClass c)
{
    return static_cast<int>(c);
}

double gini(const std::array<std::uint64_t, 3>& counts, std::uint64_t n)
{
    double sum = 0.0;
    for (std::uint64_t c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(n);
        sum += p * p;
    }
    return 1.0 - sum;
}

struct TreeBuilder {
    const std::vector<FeatureVector>& features;
    const std::vector<BeatClass>& labels;
    const ForestHyperparams& hp;
    Rng& rng;
    std::vector<TreeNode> nodes;

    // Appends the node for `rows` and its whole subtree in preorder,
    // returning the node's index. Recursion depth is bounded by
    // max_depth, so the stack is safe for any sane configuration.
    std::int32_t build(const std::vector<std::size_t>& rows, std::size_t depth)
    {
        const auto my_index = static_cast<std::int32_t>(nodes.size());
        nodes.emplace_back();

        std::array<std::uint64_t, 3> counts{};
        for (std::size_t r : rows)
            ++counts[class_index(labels[r])];
        for (int c = 0; c < 3; ++c)
            nodes[my_index].class_counts[c] =
                static_cast<std::uint32_t>(counts[c]);

        const bool pure = std::count(counts.begin(), counts.end(), 0u) == 2;
        if (depth >= hp.max_depth || rows.size() < hp.min_samples_split || pure)
            return my_index;

        // Random feature subset, drawn without replacement. The draw
        // happens only after the stopping rules above, so the stream
        // position depends on tree shape alone, not on data values.
        std::array<std::size_t, kFeatureCount> pool;
        for (std::size_t i = 0; i < kFeatureCount; ++i)
            pool[i] = i;
        const std::size_t k = std::min(hp.features_per_split, kFeatureCount);
        for (std::size_t i = 0; i < k; ++i)
            std::swap(pool[i], pool[i + rng.next_below(kFeatureCount - i)]);

        const auto n = static_cast<double>(rows.size());
        double best_score = std::numeric_limits<double>::infinity();
        std::size_t best_feature = 0;
        double best_threshold = 0.0;

        std::vector<std::pair<double, int>> order(rows.size());
        for (std::size_t fi = 0; fi < k; ++fi) {
            const std::size_t f = pool[fi];
            for (std::size_t i = 0; i < rows.size(); ++i)
                order[i] = { features[rows[i]][f], class_index(labels[rows[i]]) };
            std::sort(order.begin(), order.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::array<std::uint64_t, 3> left{};
            std::array<std::uint64_t, 3> right = counts;
            for (std::size_t i = 1; i < order.size(); ++i) {
                ++left[order[i - 1].second];
                --right[order[i - 1].second];
                if (!(order[i].first > order[i - 1].first))
                    continue;
                const auto nl = static_cast<std::uint64_t>(i);
                const auto nr = static_cast<std::uint64_t>(order.size() - i);
                const double score =
                    (static_cast<double>(nl) * gini(left, nl) +
                     static_cast<double>(nr) * gini(right, nr)) / n;
                // Strict < keeps the first candidate on ties: features in
                // draw order, thresholds ascending. Zero-gain splits are
                // allowed; they still shrink both sides, so recursion
                // terminates.
                if (score < best_score) {
                    best_score = score;
                    best_feature = f;
                    best_threshold =
                        0.5 * (order[i - 1].first + order[i].first);
                }
            }
        }

        if (!std::isfinite(best_score))
            return my_index; // every candidate feature constant on rows

        std::vector<std::size_t> left_rows;
        std::vector<std::size_t> right_rows;
        for (std::size_t r : rows)
            (features[r][best_feature] <= best_threshold ? left_rows
                                                         : right_rows)
                .push_back(r);

        nodes[my_index].feature_index = static_cast<std::int32_t>(best_feature);
        nodes[my_index].threshold = best_threshold;
        const std::int32_t left_child = build(left_rows, depth + 1);
        nodes[my_index].left = left_child;
        const std::int32_t right_child = build(right_rows, depth + 1);
        nodes[my_index].right = right_child;
        return my_index;
    }
};

void check_dataset(const std::vector<FeatureVector>& features,
                   const std::vector<BeatClass>& labels, const char* who)
{
    if (features.size() != labels.size())
        throw ParameterError(std::string(who) +
                             ": feature and label counts differ");
}

BeatClass leaf_majority(const TreeNode& node)
{
    int best = 0;
    for (int c = 1; c < 3; ++c)
        if (node.class_counts[c] > node.class_counts[best])
            best = c;
    return static_cast<BeatClass>(best);
}

} // namespace

DatasetSplit split_dataset(const std::vector<BeatClass>& labels,
                           const std::array<double, 3>& ratios,
                           std::uint64_t seed)
{
    double sum = 0.0;
    for (double r : ratios) {
        if (!(r >= 0.0))
            throw ParameterError("split_dataset: negative ratio");
        sum += r;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw ParameterError("split_dataset: ratios must sum to 1");
    if (labels.empty())
        throw InsufficientDataError("split_dataset: no labels");

    Rng rng{ derive_stream(seed, stream_tags::kSplit, 0) };
    DatasetSplit out;
    for (int c = 0; c < 3; ++c) {
        std::vector<std::size_t> stratum;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (class_index(labels[i]) == c)
                stratum.push_back(i);
        for (std::size_t i = 0; i + 1 < stratum.size(); ++i)
            std::swap(stratum[i],
                      stratum[i + rng.next_below(stratum.size() - i)]);

        const auto n = static_cast<double>(stratum.size());
        auto n_val = static_cast<std::size_t>(std::lround(ratios[1] * n));
        auto n_test = static_cast<std::size_t>(std::lround(ratios[2] * n));
        while (n_val + n_test > stratum.size()) {
            if (n_val > 0)
                --n_val;
            else
                --n_test;
        }
        const std::size_t n_train = stratum.size() - n_val - n_test;

        out.train.insert(out.train.end(), stratum.begin(),
                         stratum.begin() + n_train);
        out.validation.insert(out.validation.end(), stratum.begin() + n_train,
                              stratum.begin() + n_train + n_val);
        out.test.insert(out.test.end(), stratum.begin() + n_train + n_val,
                        stratum.end());
    }

    if ((out.validation.empty() || out.test.empty()) &&
        (ratios[1] > 0.0 || ratios[2] > 0.0)) {
        out.train.insert(out.train.end(), out.validation.begin(),
                         out.validation.end());
        out.train.insert(out.train.end(), out.test.begin(), out.test.end());
        out.validation.clear();
        out.test.clear();
        out.train_only_fallback = true;
    }

    std::sort(out.train.begin(), out.train.end());
    std::sort(out.validation.begin(), out.validation.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

DatasetSplit split_dataset(const std::vector<BeatClass>& labels,
                           std::uint64_t seed)
{
    return split_dataset(labels, kDefaultSplitRatios, seed);
}

Tree train_tree(const std::vector<FeatureVector>& features,
                const std::vector<BeatClass>& labels,
                const std::vector<std::size_t>& row_sample,
                const ForestHyperparams& hp, Rng& rng)
{
    check_dataset(features, labels, "train_tree");
    if (row_sample.empty())
        throw ParameterError("train_tree: empty bootstrap sample");
    if (hp.features_per_split == 0)
        throw ParameterError("train_tree: features_per_split must be positive");
    for (std::size_t r : row_sample)
        if (r >= features.size())
            throw ParameterError("train_tree: bootstrap index out of range");

    TreeBuilder builder{ features, labels, hp, rng, {} };
    builder.build(row_sample, 0);
    return Tree{ std::move(builder.nodes) };
}

ForestModel train_forest(const std::vector<FeatureVector>& features,
                         const std::vector<BeatClass>& labels,
                         const ForestHyperparams& hp, std::uint64_t seed)
{
    check_dataset(features, labels, "train_forest");
    if (features.empty())
        throw InsufficientDataError("train_forest: empty training set");
    if (hp.n_trees == 0)
        throw ParameterError("train_forest: need at least one tree");
    if (hp.features_per_split == 0)
        throw ParameterError("train_forest: features_per_split must be positive");

    ForestModel model;
    model.hyperparams = hp;
    model.seed = seed;
    model.trees.resize(hp.n_trees);

    const std::size_t n = features.size();
    parallel_for(hp.n_trees, [&](std::size_t t) {
        Rng bootstrap_rng{ derive_stream(seed, stream_tags::kBootstrap, t) };
        std::vector<std::size_t> sample(n);
        for (std::size_t i = 0; i < n; ++i)
            sample[i] = bootstrap_rng.next_below(n);
        Rng split_rng{ derive_stream(seed, stream_tags::kTreeSplits, t) };
        model.trees[t] = train_tree(features, labels, sample,
                                    model.hyperparams, split_rng);
    });
    return model;
}

Prediction predict(const ForestModel& model, const FeatureVector& fv)
{
    if (model.trees.empty())
        throw ParameterError("predict: model has no trees");

    std::array<std::uint64_t, 3> votes{};
    for (const Tree& tree : model.trees) {
        std::int32_t at = 0;
        while (tree.nodes[at].feature_index >= 0) {
            const TreeNode& node = tree.nodes[at];
            at = fv[node.feature_index] <= node.threshold ? node.left
                                                          : node.right;
        }
        ++votes[class_index(leaf_majority(tree.nodes[at]))];
    }

    Prediction out;
    int best = 0;
    for (int c = 0; c < 3; ++c) {
        out.vote_fractions[c] = static_cast<double>(votes[c]) /
                                static_cast<double>(model.trees.size());
        if (votes[c] > votes[best])
            best = c;
    }
    out.label = static_cast<BeatClass>(best);
    return out;
}

GridSearchResult grid_search(const std::vector<FeatureVector>& train_features,
                             const std::vector<BeatClass>& train_labels,
                             const std::vector<FeatureVector>& val_features,
                             const std::vector<BeatClass>& val_labels,
                             const HyperparamGrid& grid, std::uint64_t seed)
{
    if (grid.n_trees.empty() || grid.max_depth.empty() ||
        grid.min_samples_split.empty())
        throw ParameterError("grid_search: empty grid axis");

    const std::size_t max_trees =
        *std::max_element(grid.n_trees.begin(), grid.n_trees.end());

    // Tree t depends only on (seed, t), so the first k trees of the
    // max_trees forest ARE the k-tree forest. Train once per
    // (depth, min_split) pair and score prefixes instead of retraining
    // every ensemble size.
    std::vector<std::pair<ForestHyperparams, double>> scored;
    for (std::size_t depth : grid.max_depth) {
        for (std::size_t min_split : grid.min_samples_split) {
            ForestHyperparams hp;
            hp.n_trees = max_trees;
            hp.max_depth = depth;
            hp.min_samples_split = min_split;
            const ForestModel full =
                train_forest(train_features, train_labels, hp, seed);

            for (std::size_t k : grid.n_trees) {
                ForestModel prefix;
                prefix.hyperparams = hp;
                prefix.hyperparams.n_trees = k;
                prefix.seed = seed;
                prefix.trees.assign(
                    full.trees.begin(),
                    full.trees.begin() + static_cast<std::ptrdiff_t>(k));
                const MetricsReport report =
                    evaluate(prefix, val_features, val_labels);
                scored.emplace_back(prefix.hyperparams, report.macro_f1);
            }
        }
    }

    const auto better = [](const std::pair<ForestHyperparams, double>& a,
                           const std::pair<ForestHyperparams, double>& b) {
        if (a.second != b.second)
            return a.second > b.second;
        if (a.first.n_trees != b.first.n_trees)
            return a.first.n_trees < b.first.n_trees;
        if (a.first.max_depth != b.first.max_depth)
            return a.first.max_depth < b.first.max_depth;
        return a.first.min_samples_split < b.first.min_samples_split;
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < scored.size(); ++i)
        if (better(scored[i], scored[best]))
            best = i;
    return GridSearchResult{ scored[best].first, scored[best].second };
}

MetricsReport evaluate(const ForestModel& model,
                       const std::vector<FeatureVector>& features,
                       const std::vector<BeatClass>& labels)
{
    check_dataset(features, labels, "evaluate");
    if (features.empty())
        throw InsufficientDataError("evaluate: empty test set");

    std::array<std::array<std::uint64_t, 3>, 3> confusion{};
    for (std::size_t i = 0; i < features.size(); ++i)
        ++confusion[class_index(labels[i])]
                   [class_index(predict(model, features[i]).label)];
    return metrics_from_confusion(confusion);
}

MetricsReport metrics_from_confusion(
    const std::array<std::array<std::uint64_t, 3>, 3>& confusion)
{
    MetricsReport m;
    m.confusion = confusion;

    std::uint64_t total = 0;
    std::uint64_t diagonal = 0;
    std::array<std::uint64_t, 3> row{};
    std::array<std::uint64_t, 3> col{};
    for (int t = 0; t < 3; ++t)
        for (int p = 0; p < 3; ++p) {
            total += confusion[t][p];
            row[t] += confusion[t][p];
            col[p] += confusion[t][p];
            if (t == p)
                diagonal += confusion[t][p];
        }
    if (total == 0)
        throw InsufficientDataError("metrics_from_confusion: empty matrix");

    const auto ratio = [](std::uint64_t num, std::uint64_t den) {
        return den == 0 ? 0.0
                        : static_cast<double>(num) / static_cast<double>(den);
    };

    m.accuracy = ratio(diagonal, total);
    for (int c = 0; c < 3; ++c) {
        const std::uint64_t tp = confusion[c][c];
        m.precision[c] = ratio(tp, col[c]);
        m.recall[c] = ratio(tp, row[c]);
        m.f1[c] = m.precision[c] + m.recall[c] == 0.0
                      ? 0.0
                      : 2.0 * m.precision[c] * m.recall[c] /
                            (m.precision[c] + m.recall[c]);
        m.tp_rate[c] = ratio(tp, row[c]);
        m.fn_rate[c] = ratio(row[c] - tp, row[c]);
        m.macro_f1 += m.f1[c] / 3.0;
    }

    std::uint64_t tp_bin = 0;
    std::uint64_t fn_bin = 0;
    for (int t = 1; t < 3; ++t) {
        fn_bin += confusion[t][0];
        for (int p = 1; p < 3; ++p)
            tp_bin += confusion[t][p];
    }
    const std::uint64_t tn_bin = confusion[0][0];
    const std::uint64_t fp_bin = confusion[0][1] + confusion[0][2];
    m.sensitivity = ratio(tp_bin, tp_bin + fn_bin);
    m.specificity = ratio(tn_bin, tn_bin + fp_bin);
    m.binary_accuracy = ratio(tp_bin + tn_bin, total);
    return m;
}

std::string model_to_json(const ForestModel& model)
{
    nlohmann::json j;
    j["format_version"] = 1;
    j["class_order"] = { to_string(BeatClass::Normal),
                         to_string(BeatClass::Pvc),
                         to_string(BeatClass::Af) };
    j["feature_names"] = kFeatureNames;
    j["seed"] = model.seed;
    j["hyperparams"] = {
        { "n_trees", model.hyperparams.n_trees },
        { "max_depth", model.hyperparams.max_depth },
        { "min_samples_split", model.hyperparams.min_samples_split },
        { "features_per_split", model.hyperparams.features_per_split },
    };

    nlohmann::json trees = nlohmann::json::array();
    for (const Tree& tree : model.trees) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const TreeNode& node : tree.nodes)
            nodes.push_back({ { "f", node.feature_index },
                              { "t", node.threshold },
                              { "l", node.left },
                              { "r", node.right },
                              { "c", node.class_counts } });
        trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
    return j.dump(2);
}

ForestModel model_from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("model_from_json: ") + e.what());
    }

    try {
        if (j.at("format_version").get<int>() != 1)
            throw ParameterError("model_from_json: unsupported format version");

        ForestModel model;
        model.seed = j.at("seed").get<std::uint64_t>();
        const nlohmann::json& hp = j.at("hyperparams");
        model.hyperparams.n_trees = hp.at("n_trees").get<std::size_t>();
        model.hyperparams.max_depth = hp.at("max_depth").get<std::size_t>();
        model.hyperparams.min_samples_split =
            hp.at("min_samples_split").get<std::size_t>();
        model.hyperparams.features_per_split =
            hp.at("features_per_split").get<std::size_t>();

        for (const nlohmann::json& nodes : j.at("trees")) {
            Tree tree;
            for (const nlohmann::json& n : nodes) {
                TreeNode node;
                node.feature_index = n.at("f").get<std::int32_t>();
                node.threshold = n.at("t").get<double>();
                node.left = n.at("l").get<std::int32_t>();
                node.right = n.at("r").get<std::int32_t>();
                const auto counts =
                    n.at("c").get<std::array<std::uint32_t, 3>>();
                node.class_counts = counts;
                const auto size = static_cast<std::int32_t>(nodes.size());
                if (node.feature_index < -1 ||
                    node.feature_index >= static_cast<int>(kFeatureCount) ||
                    node.left >= size || node.right >= size)
                    throw ParameterError("model_from_json: corrupt tree node");
                if (node.feature_index >= 0 &&
                    (node.left < 0 || node.right < 0))
                    throw ParameterError(
                        "model_from_json: internal node missing a child");
                tree.nodes.push_back(node);
            }
            if (tree.nodes.empty())
                throw ParameterError("model_from_json: empty tree");
            model.trees.push_back(std::move(tree));
        }
        if (model.trees.size() != model.hyperparams.n_trees)
            throw ParameterError(
                "model_from_json: tree count disagrees with hyperparams");
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("model_from_json: ") + e.what());
    }
}

std::string metrics_to_json(const MetricsReport& m)
{
    nlohmann::json j;
    j["confusion"] = m.confusion;
    j["accuracy"] = m.accuracy;
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["f1"] = m.f1;
    j["macro_f1"] = m.macro_f1;
    j["tp_rate"] = m.tp_rate;
    j["fn_rate"] = m.fn_rate;
    j["sensitivity"] = m.sensitivity;
    j["specificity"] = m.specificity;
    j["binary_accuracy"] = m.binary_accuracy;
    return j.dump(2);
}

} // namespace noisepulse
