#pragma once

#include <cstdint>
#include <vector>

#include "edgesim/classifiers.hpp"
#include "edgesim/dataset.hpp"

namespace edgesim {

struct EvalReport {
    double accuracy = 0.0;
    std::vector<double> precision;  // per class
    std::vector<double> recall;
    std::vector<std::vector<long long>> confusion;  // [true][predicted]
    double train_wall_s = 0.0;
    double test_wall_s = 0.0;
    std::vector<double> fold_accuracies;
    std::vector<std::string> label_names;
};

// Seeded shuffle + stratified folds (per-class sizes differ by <= 1), each
// fold once as validation; normalization stats recomputed per training split;
// confusion aggregated across folds.
EvalReport cross_validate(Algorithm alg, const Dataset& ds, int k_folds,
                          const Hyperparams& hp, std::uint64_t seed);

// Stratified fold assignment (exposed for tests): result[i] = fold of row i.
std::vector<int> stratified_folds(const Dataset& ds, int k_folds, std::uint64_t seed);

// Apply an already-trained model to labeled records (CLI `evaluate`).
EvalReport evaluate_model(const Model& model, const std::vector<TraceRecord>& records);

struct BenchEntry {
    Algorithm algorithm = Algorithm::ZeroR;
    double mean_accuracy = 0.0;
    double ci95_accuracy = 0.0;  // 1.96 * stderr; 0 when repetitions == 1
    double mean_train_s = 0.0;
    double mean_test_s = 0.0;
    double ci95_time = 0.0;  // over train+test wall time
    std::vector<double> accuracies;  // per repetition
};

struct BenchReport {
    int repetitions = 0;
    int k_folds = 0;
    std::vector<BenchEntry> entries;
};

// Repeated cross-validation with distinct fold seeds per repetition.
BenchReport benchmark(const std::vector<Algorithm>& algorithms, const Dataset& ds,
                      int repetitions, int k_folds, const Hyperparams& hp,
                      std::uint64_t seed);

}  // namespace edgesim
