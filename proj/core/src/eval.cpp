#include "m2v/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "m2v/errors.hpp"
#include "m2v/kmer.hpp"
#include "m2v/rng.hpp"

namespace m2v {

Split stratified_split(const std::vector<std::string>& labels, const SplitSpec& spec,
                       std::uint32_t run_index) {
    if (spec.train_fraction <= 0.0 || spec.train_fraction >= 1.0) {
        throw argument_error("stratified_split: train_fraction must be in (0,1)");
    }
    if (labels.empty()) {
        throw argument_error("stratified_split: no rows");
    }

    const std::size_t n = labels.size();
    const auto total_target = static_cast<std::size_t>(
        std::llround(spec.train_fraction * static_cast<double>(n)));

    Rng rng(Rng::derive(spec.rng_seed, run_index));

    if (!spec.stratified) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        Split split;
        split.train.assign(order.begin(), order.begin() + total_target);
        split.test.assign(order.begin() + total_target, order.end());
        std::sort(split.train.begin(), split.train.end());
        std::sort(split.test.begin(), split.test.end());
        return split;
    }

    // Group rows per label, label order = sorted label order.
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[labels[i]].push_back(i);
    for (const auto& [label, rows] : groups) {
        if (rows.size() < 2) {
            throw data_error("stratified_split: label '" + label + "' has only one record");
        }
    }

    // Largest-remainder allocation of the train budget across labels.
    struct Quota {
        const std::vector<std::size_t>* rows;
        std::size_t take;
        double remainder;
    };
    std::vector<Quota> quotas;
    std::size_t allocated = 0;
    for (const auto& [label, rows] : groups) {
        double exact = spec.train_fraction * static_cast<double>(rows.size());
        auto base = static_cast<std::size_t>(exact);
        quotas.push_back({&rows, base, exact - static_cast<double>(base)});
        allocated += base;
    }
    std::vector<std::size_t> by_remainder(quotas.size());
    std::iota(by_remainder.begin(), by_remainder.end(), 0);
    std::stable_sort(by_remainder.begin(), by_remainder.end(), [&](std::size_t a, std::size_t b) {
        return quotas[a].remainder > quotas[b].remainder;
    });
    for (std::size_t i = 0; i < by_remainder.size() && allocated < total_target; ++i) {
        ++quotas[by_remainder[i]].take;
        ++allocated;
    }
    // Every label keeps at least one row on each side.
    for (auto& q : quotas) {
        q.take = std::clamp<std::size_t>(q.take, 1, q.rows->size() - 1);
    }

    Split split;
    for (auto& q : quotas) {
        std::vector<std::size_t> rows = *q.rows;
        rng.shuffle(rows);
        split.train.insert(split.train.end(), rows.begin(), rows.begin() + q.take);
        split.test.insert(split.test.end(), rows.begin() + q.take, rows.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

namespace {

std::uint64_t row_distance(const EmbeddingVector& a, const EmbeddingVector& b,
                           DistanceMetric metric) {
    // Squared L2 preserves the neighbor ordering and stays in exact integers.
    return metric == DistanceMetric::euclidean ? squared_l2_distance(a, b)
                                               : l1_distance(a, b);
}

}  // namespace

std::vector<std::string> knn_classify(const std::vector<EmbeddingVector>& train_rows,
                                      const std::vector<std::string>& train_labels,
                                      const std::vector<EmbeddingVector>& test_rows,
                                      std::uint32_t n_neighbors, DistanceMetric metric) {
    if (train_rows.empty()) {
        throw argument_error("knn_classify: empty train set");
    }
    if (train_rows.size() != train_labels.size()) {
        throw argument_error("knn_classify: train rows/labels size mismatch");
    }
    if (n_neighbors == 0 || n_neighbors > train_rows.size()) {
        throw argument_error("knn_classify: n_neighbors must be in [1, |train|]");
    }

    std::vector<std::string> predictions;
    predictions.reserve(test_rows.size());

    std::vector<std::pair<std::uint64_t, std::size_t>> dist(train_rows.size());
    for (const auto& query : test_rows) {
        for (std::size_t i = 0; i < train_rows.size(); ++i) {
            dist[i] = {row_distance(query, train_rows[i], metric), i};
        }
        std::nth_element(dist.begin(), dist.begin() + (n_neighbors - 1), dist.end());
        std::map<std::string, std::uint32_t> votes;
        for (std::uint32_t j = 0; j < n_neighbors; ++j) {
            ++votes[train_labels[dist[j].second]];
        }
        // std::map iterates labels in sorted order, so the first maximal
        // entry is the tie-break winner.
        auto best = votes.begin();
        for (auto it = std::next(votes.begin()); it != votes.end(); ++it) {
            if (it->second > best->second) best = it;
        }
        predictions.push_back(best->first);
    }
    return predictions;
}

MetricValues compute_metrics(const std::vector<std::string>& truth,
                             const std::vector<std::string>& predicted,
                             const std::vector<std::string>& label_set) {
    if (truth.size() != predicted.size()) {
        throw argument_error("compute_metrics: truth/predicted length mismatch");
    }
    if (truth.empty()) {
        throw argument_error("compute_metrics: no predictions");
    }

    std::unordered_map<std::string, std::size_t> class_index;
    for (std::size_t i = 0; i < label_set.size(); ++i) class_index[label_set[i]] = i;

    const std::size_t c = label_set.size();
    std::vector<std::uint64_t> tp(c, 0), fp(c, 0), fn(c, 0), support(c, 0);
    std::uint64_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        auto ti = class_index.find(truth[i]);
        auto pi = class_index.find(predicted[i]);
        if (ti == class_index.end() || pi == class_index.end()) {
            throw argument_error("compute_metrics: label outside label_set");
        }
        ++support[ti->second];
        if (ti->second == pi->second) {
            ++correct;
            ++tp[ti->second];
        } else {
            ++fn[ti->second];
            ++fp[pi->second];
        }
    }

    auto ratio = [](std::uint64_t num, std::uint64_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };

    MetricValues m;
    m.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
    for (std::size_t i = 0; i < c; ++i) {
        double precision = ratio(tp[i], tp[i] + fp[i]);
        double recall = ratio(tp[i], tp[i] + fn[i]);
        double f1 = (precision + recall) == 0.0 ? 0.0
                                                : 2.0 * precision * recall / (precision + recall);
        double weight = static_cast<double>(support[i]) / static_cast<double>(truth.size());
        m.precision_weighted += weight * precision;
        m.recall_weighted += weight * recall;
        m.f1_weighted += weight * f1;
        m.f1_macro += f1;
    }
    m.f1_macro /= static_cast<double>(c);
    return m;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Picks the neighbor count from the grid on a held-out slice of the train
// rows; accuracy ties go to the smaller grid value.
std::uint32_t select_neighbors(const std::vector<EmbeddingVector>& train_rows,
                               const std::vector<std::string>& train_labels,
                               const std::vector<std::uint32_t>& grid, DistanceMetric metric,
                               std::uint64_t seed) {
    if (grid.empty()) {
        throw argument_error("run_experiment: empty neighbor grid");
    }
    if (grid.size() == 1 || train_rows.size() < 5) return grid.front();

    std::vector<std::size_t> order(train_rows.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);
    const std::size_t n_fit = (order.size() * 4) / 5;

    std::vector<EmbeddingVector> fit_rows, val_rows;
    std::vector<std::string> fit_labels, val_labels;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i < n_fit) {
            fit_rows.push_back(train_rows[order[i]]);
            fit_labels.push_back(train_labels[order[i]]);
        } else {
            val_rows.push_back(train_rows[order[i]]);
            val_labels.push_back(train_labels[order[i]]);
        }
    }

    std::uint32_t best_k = 0;
    double best_acc = -1.0;
    for (std::uint32_t k : grid) {
        if (k > fit_rows.size()) continue;
        auto preds = knn_classify(fit_rows, fit_labels, val_rows, k, metric);
        std::size_t correct = 0;
        for (std::size_t i = 0; i < preds.size(); ++i) {
            if (preds[i] == val_labels[i]) ++correct;
        }
        double acc = static_cast<double>(correct) / static_cast<double>(preds.size());
        if (acc > best_acc) {
            best_acc = acc;
            best_k = k;
        }
    }
    return best_k == 0 ? grid.front() : best_k;
}

}  // namespace

ExperimentResult run_experiment(const Corpus& corpus, const ExperimentConfig& config) {
    if (!corpus.fully_labeled()) {
        throw data_error("run_experiment: corpus must be fully labeled");
    }
    if (config.split.n_runs == 0) {
        throw argument_error("run_experiment: n_runs must be >= 1");
    }

    ExperimentResult result;
    const auto vocabulary = corpus_vocabulary(corpus, config.embedding.k);

    EmbeddingConfig embedding = config.embedding;
    if (config.collision_target >= 0.0) {
        auto t0 = std::chrono::steady_clock::now();
        TuneResult tuned =
            tune_table_size(vocabulary, config.collision_target, config.embedding.seed);
        result.tune_time_s = seconds_since(t0);
        embedding.m = tuned.chosen_m;
        result.collision_fraction = tuned.achieved.collision_fraction;
    } else {
        result.collision_fraction =
            measure_collisions(vocabulary, embedding.m, embedding.seed).collision_fraction;
    }
    result.chosen_m = embedding.m;

    auto t0 = std::chrono::steady_clock::now();
    EmbeddingMatrix matrix = embed_corpus(corpus, embedding, config.n_threads);
    result.embed_time_s = seconds_since(t0);

    std::vector<std::string> labels(matrix.labels.size());
    for (std::size_t i = 0; i < matrix.labels.size(); ++i) labels[i] = *matrix.labels[i];

    MetricsReport& report = result.report;
    for (std::uint32_t run = 0; run < config.split.n_runs; ++run) {
        Split split = stratified_split(labels, config.split, run);

        std::vector<EmbeddingVector> train_rows, test_rows;
        std::vector<std::string> train_labels, test_labels;
        train_rows.reserve(split.train.size());
        for (std::size_t i : split.train) {
            train_rows.push_back(matrix.rows[i]);
            train_labels.push_back(labels[i]);
        }
        for (std::size_t i : split.test) {
            test_rows.push_back(matrix.rows[i]);
            test_labels.push_back(labels[i]);
        }

        auto t_train = std::chrono::steady_clock::now();
        std::uint32_t n_neighbors =
            select_neighbors(train_rows, train_labels, config.neighbor_grid, config.metric,
                             Rng::derive(config.split.rng_seed, 0x56414cull + run));
        report.train_time_s += seconds_since(t_train);
        report.chosen_neighbors.push_back(n_neighbors);

        auto t_predict = std::chrono::steady_clock::now();
        auto predictions =
            knn_classify(train_rows, train_labels, test_rows, n_neighbors, config.metric);
        report.predict_time_s += seconds_since(t_predict);

        report.per_run.push_back(compute_metrics(test_labels, predictions, corpus.label_set));
    }

    auto mean_of = [&](auto field) {
        double acc = 0.0;
        for (const auto& run : report.per_run) acc += run.*field;
        return acc / static_cast<double>(report.per_run.size());
    };
    auto std_of = [&](auto field, double mean) {
        double acc = 0.0;
        for (const auto& run : report.per_run) {
            double d = run.*field - mean;
            acc += d * d;
        }
        return std::sqrt(acc / static_cast<double>(report.per_run.size()));
    };
    auto aggregate = [&](auto field) {
        report.mean.*field = mean_of(field);
        report.std_dev.*field = std_of(field, report.mean.*field);
    };
    aggregate(&MetricValues::accuracy);
    aggregate(&MetricValues::precision_weighted);
    aggregate(&MetricValues::recall_weighted);
    aggregate(&MetricValues::f1_weighted);
    aggregate(&MetricValues::f1_macro);

    return result;
}

}  // namespace m2v
