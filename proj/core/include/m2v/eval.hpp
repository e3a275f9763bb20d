#ifndef M2V_EVAL_HPP
#define M2V_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "m2v/corpus.hpp"
#include "m2v/embed.hpp"
#include "m2v/tune.hpp"

namespace m2v {

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint32_t n_runs = 5;
    std::uint64_t rng_seed = 0;
    bool stratified = true;
};

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

// Per-label proportions are preserved within one record; deterministic in
// (spec.rng_seed, run_index).
Split stratified_split(const std::vector<std::string>& labels, const SplitSpec& spec,
                       std::uint32_t run_index);

enum class DistanceMetric { euclidean, manhattan };

// Majority vote over the n nearest train rows. Distance ties go to the lower
// train index, vote ties to the label earliest in lexicographic order.
std::vector<std::string> knn_classify(const std::vector<EmbeddingVector>& train_rows,
                                      const std::vector<std::string>& train_labels,
                                      const std::vector<EmbeddingVector>& test_rows,
                                      std::uint32_t n_neighbors,
                                      DistanceMetric metric = DistanceMetric::euclidean);

struct MetricValues {
    double accuracy = 0.0;
    double precision_weighted = 0.0;
    double recall_weighted = 0.0;
    double f1_weighted = 0.0;
    double f1_macro = 0.0;
};

// Per-class precision/recall/F1 use the 0/0 := 0 convention; macro averages
// over the full label_set, so zero-support classes pull the macro score down.
MetricValues compute_metrics(const std::vector<std::string>& truth,
                             const std::vector<std::string>& predicted,
                             const std::vector<std::string>& label_set);

struct MetricsReport {
    MetricValues mean;
    MetricValues std_dev;
    std::vector<MetricValues> per_run;
    std::vector<std::uint32_t> chosen_neighbors;  // per run, from the validation slice
    double train_time_s = 0.0;
    double predict_time_s = 0.0;
};

struct ExperimentConfig {
    EmbeddingConfig embedding;      // embedding.m ignored when tuning
    double collision_target = -1.0; // < 0 means: use embedding.m as given
    SplitSpec split;
    std::vector<std::uint32_t> neighbor_grid = {1, 3, 5};
    DistanceMetric metric = DistanceMetric::euclidean;
    unsigned n_threads = 1;
};

struct ExperimentResult {
    MetricsReport report;
    std::uint64_t chosen_m = 0;
    double collision_fraction = 0.0;
    double embed_time_s = 0.0;
    double tune_time_s = 0.0;
};

// Tune (optionally), embed once, then repeat split/fit/predict/score.
ExperimentResult run_experiment(const Corpus& corpus, const ExperimentConfig& config);

}  // namespace m2v

#endif  // M2V_EVAL_HPP
