#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edgesim/dataset.hpp"

namespace edgesim {

enum class Algorithm { ZeroR, NaiveBayes, Knn, DecisionTree };

const std::string& algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(const std::string& name);

struct Hyperparams {
    int knn_k = 1;               // WEKA IBk default
    double nb_alpha = 1.0;       // Laplace smoothing
    double nb_var_floor = 1e-9;  // Gaussian variance floor
    int tree_max_depth = 25;
    int tree_min_leaf = 2;
};

struct ZeroRState {
    int majority_label = 0;  // ties resolved to the lowest label index
};

struct NaiveBayesState {
    double alpha = 1.0;
    double var_floor = 1e-9;
    std::vector<double> class_counts;               // [C]
    std::vector<std::vector<double>> mean;          // [C][F], numeric slots
    std::vector<std::vector<double>> var;           // [C][F], population variance
    std::vector<std::vector<std::vector<double>>> cat_counts;  // [C][F][V]
};

struct KnnState {
    int k = 1;
    // normalized copies of the training rows, in training order
    std::vector<std::vector<FeatureValue>> rows;
    std::vector<int> labels;
};

struct TreeNode {
    bool leaf = true;
    int majority = 0;                    // fallback for missing branches
    std::vector<double> distribution;    // class frequencies at this node
    int feature = -1;
    double threshold = 0.0;              // numeric split: <= goes left
    std::vector<int> children;           // numeric: [left, right]; categorical: per code
};

struct DecisionTreeState {
    std::vector<TreeNode> nodes;  // node 0 is the root (empty if dataset empty)
};

// Trained classifier. schema carries the training-split normalization stats;
// only the state struct matching `algorithm` is populated.
struct Model {
    Algorithm algorithm = Algorithm::ZeroR;
    Schema schema;
    std::vector<std::string> label_names;
    Hyperparams hyperparams;
    ZeroRState zeror;
    NaiveBayesState nb;
    KnnState knn;
    DecisionTreeState tree;
};

struct Prediction {
    int label = 0;
    std::vector<double> distribution;  // sums to 1
};

// Training is deterministic for every algorithm; row order is the tiebreak.
Model train(Algorithm alg, const Dataset& dataset, const Hyperparams& hp);
Model train_subset(Algorithm alg, const Dataset& dataset,
                   const std::vector<std::size_t>& row_idx, const Hyperparams& hp);

Prediction predict(const Model& model, const std::vector<FeatureValue>& raw_row);

}  // namespace edgesim
