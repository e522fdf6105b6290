#include "edgesim/classifiers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "edgesim/errors.hpp"

namespace edgesim {

const std::string& algorithm_name(Algorithm a) {
    static const std::array<std::string, 4> names = {"ZeroR", "NaiveBayes", "KNN",
                                                     "DecisionTree"};
    return names[static_cast<std::size_t>(a)];
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
    if (name == "ZeroR" || name == "zeror") return Algorithm::ZeroR;
    if (name == "NaiveBayes" || name == "nb") return Algorithm::NaiveBayes;
    if (name == "KNN" || name == "knn") return Algorithm::Knn;
    if (name == "DecisionTree" || name == "tree") return Algorithm::DecisionTree;
    return std::nullopt;
}

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

std::vector<double> label_distribution(const Dataset& ds,
                                       const std::vector<std::size_t>& idx) {
    std::vector<double> counts(ds.label_names.size(), 0.0);
    for (std::size_t r : idx) counts[ds.labels[r]] += 1.0;
    return counts;
}

int argmax_lowest(const std::vector<double>& v) {
    int best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[best]) best = static_cast<int>(i);
    }
    return best;
}

std::vector<FeatureValue> normalized_row(const Schema& schema,
                                         const std::vector<FeatureValue>& raw) {
    std::vector<FeatureValue> out(raw.size());
    for (std::size_t f = 0; f < raw.size(); ++f) {
        if (schema.is_numeric(f)) {
            out[f].num = schema.normalized(f, raw[f].num);
        } else {
            out[f].cat = raw[f].cat;
        }
    }
    return out;
}

double entropy(const std::vector<double>& counts, double total) {
    double h = 0.0;
    for (double c : counts) {
        if (c <= 0.0) continue;
        const double p = c / total;
        h -= p * std::log2(p);
    }
    return h;
}

// ---- training ----------------------------------------------------------

void train_zeror(Model& m, const Dataset& ds, const std::vector<std::size_t>& idx) {
    const auto counts = label_distribution(ds, idx);
    m.zeror.majority_label = argmax_lowest(counts);
}

void train_naive_bayes(Model& m, const Dataset& ds,
                       const std::vector<std::size_t>& idx) {
    NaiveBayesState& nb = m.nb;
    nb.alpha = m.hyperparams.nb_alpha;
    nb.var_floor = m.hyperparams.nb_var_floor;
    const std::size_t c_count = ds.label_names.size();
    const std::size_t f_count = m.schema.size();

    nb.class_counts.assign(c_count, 0.0);
    nb.mean.assign(c_count, std::vector<double>(f_count, 0.0));
    nb.var.assign(c_count, std::vector<double>(f_count, 0.0));
    nb.cat_counts.assign(c_count, {});
    for (std::size_t c = 0; c < c_count; ++c) {
        nb.cat_counts[c].resize(f_count);
        for (std::size_t f = 0; f < f_count; ++f) {
            if (!m.schema.is_numeric(f)) {
                nb.cat_counts[c][f].assign(m.schema.cat_values[f].size(), 0.0);
            }
        }
    }

    std::vector<std::vector<double>> sq_sum(c_count, std::vector<double>(f_count, 0.0));
    for (std::size_t r : idx) {
        const int c = ds.labels[r];
        nb.class_counts[c] += 1.0;
        for (std::size_t f = 0; f < f_count; ++f) {
            if (m.schema.is_numeric(f)) {
                const double x = m.schema.normalized(f, ds.rows[r][f].num);
                nb.mean[c][f] += x;
                sq_sum[c][f] += x * x;
            } else {
                const int code = ds.rows[r][f].cat;
                if (code >= 0) nb.cat_counts[c][f][code] += 1.0;
            }
        }
    }
    for (std::size_t c = 0; c < c_count; ++c) {
        const double n = nb.class_counts[c];
        if (n <= 0.0) continue;
        for (std::size_t f = 0; f < f_count; ++f) {
            if (!m.schema.is_numeric(f)) continue;
            nb.mean[c][f] /= n;
            nb.var[c][f] = sq_sum[c][f] / n - nb.mean[c][f] * nb.mean[c][f];
        }
    }
}

void train_knn(Model& m, const Dataset& ds, const std::vector<std::size_t>& idx) {
    m.knn.k = m.hyperparams.knn_k;
    m.knn.rows.reserve(idx.size());
    m.knn.labels.reserve(idx.size());
    for (std::size_t r : idx) {
        m.knn.rows.push_back(normalized_row(m.schema, ds.rows[r]));
        m.knn.labels.push_back(ds.labels[r]);
    }
}

struct SplitCandidate {
    double gain = -1.0;
    int feature = -1;
    double threshold = 0.0;  // numeric only
};

void grow_tree(Model& m, const Dataset& ds, std::vector<std::size_t> idx, int depth,
               int node_id) {
    DecisionTreeState& tree = m.tree;
    const Hyperparams& hp = m.hyperparams;
    const std::size_t c_count = ds.label_names.size();

    auto counts = label_distribution(ds, idx);
    const double total = static_cast<double>(idx.size());
    {
        TreeNode& node = tree.nodes[node_id];
        node.majority = argmax_lowest(counts);
        node.distribution.assign(c_count, 0.0);
        for (std::size_t c = 0; c < c_count; ++c) node.distribution[c] = counts[c] / total;
    }

    const double node_entropy = entropy(counts, total);
    const bool pure = node_entropy <= 0.0;
    if (pure || depth >= hp.tree_max_depth || idx.size() < 2) return;

    const std::size_t f_count = m.schema.size();
    SplitCandidate best;

    for (std::size_t f = 0; f < f_count; ++f) {
        if (m.schema.is_numeric(f)) {
            // binary split at the best midpoint between distinct sorted values
            std::vector<std::pair<double, int>> vals;
            vals.reserve(idx.size());
            for (std::size_t r : idx) {
                vals.emplace_back(m.schema.normalized(f, ds.rows[r][f].num),
                                  ds.labels[r]);
            }
            std::sort(vals.begin(), vals.end());
            std::vector<double> left(c_count, 0.0);
            std::vector<double> right = counts;
            for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
                left[vals[i].second] += 1.0;
                right[vals[i].second] -= 1.0;
                if (vals[i].first == vals[i + 1].first) continue;
                const double nl = static_cast<double>(i + 1);
                const double nr = total - nl;
                if (nl < hp.tree_min_leaf || nr < hp.tree_min_leaf) continue;
                const double gain = node_entropy - (nl / total) * entropy(left, nl) -
                                    (nr / total) * entropy(right, nr);
                if (gain > best.gain + 1e-12) {
                    best = {gain, static_cast<int>(f),
                            (vals[i].first + vals[i + 1].first) / 2.0};
                }
            }
        } else {
            // multiway split, one branch per dictionary code
            const std::size_t v_count = m.schema.cat_values[f].size();
            if (v_count < 2) continue;
            std::vector<std::vector<double>> per_value(
                v_count, std::vector<double>(c_count, 0.0));
            std::vector<double> value_totals(v_count, 0.0);
            for (std::size_t r : idx) {
                const int code = ds.rows[r][f].cat;
                if (code < 0) continue;
                per_value[code][ds.labels[r]] += 1.0;
                value_totals[code] += 1.0;
            }
            int populated = 0;
            for (double vt : value_totals) {
                if (vt >= hp.tree_min_leaf) ++populated;
            }
            if (populated < 2) continue;
            double children_entropy = 0.0;
            for (std::size_t v = 0; v < v_count; ++v) {
                if (value_totals[v] <= 0.0) continue;
                children_entropy +=
                    (value_totals[v] / total) * entropy(per_value[v], value_totals[v]);
            }
            const double gain = node_entropy - children_entropy;
            if (gain > best.gain + 1e-12) {
                best = {gain, static_cast<int>(f), 0.0};
            }
        }
    }

    if (best.feature < 0 || best.gain <= 1e-12) return;

    // index, not reference: growing tree.nodes below reallocates
    tree.nodes[node_id].leaf = false;
    tree.nodes[node_id].feature = best.feature;
    const std::size_t f = static_cast<std::size_t>(best.feature);

    if (m.schema.is_numeric(f)) {
        tree.nodes[node_id].threshold = best.threshold;
        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t r : idx) {
            const double x = m.schema.normalized(f, ds.rows[r][f].num);
            (x <= best.threshold ? left_idx : right_idx).push_back(r);
        }
        const int left_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        const int right_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[node_id].children = {left_id, right_id};
        grow_tree(m, ds, std::move(left_idx), depth + 1, left_id);
        grow_tree(m, ds, std::move(right_idx), depth + 1, right_id);
    } else {
        const std::size_t v_count = m.schema.cat_values[f].size();
        std::vector<std::vector<std::size_t>> buckets(v_count);
        for (std::size_t r : idx) {
            const int code = ds.rows[r][f].cat;
            if (code >= 0) buckets[code].push_back(r);
        }
        std::vector<int> children(v_count, -1);
        for (std::size_t v = 0; v < v_count; ++v) {
            if (buckets[v].empty()) continue;  // -1 -> falls back to node majority
            children[v] = static_cast<int>(tree.nodes.size());
            tree.nodes.emplace_back();
        }
        tree.nodes[node_id].children = children;
        for (std::size_t v = 0; v < v_count; ++v) {
            if (children[v] >= 0) {
                grow_tree(m, ds, std::move(buckets[v]), depth + 1, children[v]);
            }
        }
    }
}

void train_tree(Model& m, const Dataset& ds, const std::vector<std::size_t>& idx) {
    m.tree.nodes.clear();
    m.tree.nodes.emplace_back();
    grow_tree(m, ds, idx, 0, 0);
}

// ---- prediction --------------------------------------------------------

Prediction predict_zeror(const Model& m) {
    Prediction p;
    p.label = m.zeror.majority_label;
    p.distribution.assign(m.label_names.size(), 0.0);
    p.distribution[p.label] = 1.0;
    return p;
}

Prediction predict_naive_bayes(const Model& m, const std::vector<FeatureValue>& row) {
    const NaiveBayesState& nb = m.nb;
    const std::size_t c_count = m.label_names.size();
    const std::size_t f_count = m.schema.size();
    double n_total = 0.0;
    for (double c : nb.class_counts) n_total += c;

    std::vector<double> log_score(c_count, 0.0);
    for (std::size_t c = 0; c < c_count; ++c) {
        if (nb.class_counts[c] <= 0.0) {
            log_score[c] = -std::numeric_limits<double>::infinity();
            continue;
        }
        double s = std::log(nb.class_counts[c] / n_total);
        for (std::size_t f = 0; f < f_count; ++f) {
            if (m.schema.is_numeric(f)) {
                const double x = m.schema.normalized(f, row[f].num);
                const double v = std::max(nb.var[c][f], nb.var_floor);
                const double d = x - nb.mean[c][f];
                s += -0.5 * std::log(kTwoPi * v) - d * d / (2.0 * v);
            } else {
                const auto& table = nb.cat_counts[c][f];
                const double v_size = static_cast<double>(table.size());
                const int code = row[f].cat;
                const double count =
                    (code >= 0 && code < static_cast<int>(table.size())) ? table[code]
                                                                         : 0.0;
                s += std::log((count + nb.alpha) /
                              (nb.class_counts[c] + nb.alpha * v_size));
            }
        }
        log_score[c] = s;
    }

    // log-sum-exp normalization: invariant to a constant shift
    double max_log = -std::numeric_limits<double>::infinity();
    for (double s : log_score) max_log = std::max(max_log, s);
    double z = 0.0;
    Prediction p;
    p.distribution.assign(c_count, 0.0);
    for (std::size_t c = 0; c < c_count; ++c) {
        p.distribution[c] = std::exp(log_score[c] - max_log);
        z += p.distribution[c];
    }
    for (double& d : p.distribution) d /= z;
    p.label = argmax_lowest(p.distribution);
    return p;
}

double knn_distance_sq(const Schema& schema, const std::vector<FeatureValue>& a,
                       const std::vector<FeatureValue>& b) {
    double d2 = 0.0;
    for (std::size_t f = 0; f < a.size(); ++f) {
        if (schema.is_numeric(f)) {
            const double d = a[f].num - b[f].num;
            d2 += d * d;
        } else {
            d2 += (a[f].cat == b[f].cat) ? 0.0 : 1.0;
        }
    }
    return d2;
}

Prediction predict_knn(const Model& m, const std::vector<FeatureValue>& raw) {
    const KnnState& knn = m.knn;
    const auto query = normalized_row(m.schema, raw);
    const std::size_t n = knn.rows.size();
    const std::size_t k = std::min<std::size_t>(std::max(1, knn.k), n);

    // max-heap of the best k (distance, train index), lexicographic order so
    // distance ties resolve to the lowest training index
    using Entry = std::pair<double, std::size_t>;
    std::vector<Entry> heap;
    heap.reserve(k);
    for (std::size_t i = 0; i < n; ++i) {
        const Entry e{knn_distance_sq(m.schema, query, knn.rows[i]), i};
        if (heap.size() < k) {
            heap.push_back(e);
            std::push_heap(heap.begin(), heap.end());
        } else if (e < heap.front()) {
            std::pop_heap(heap.begin(), heap.end());
            heap.back() = e;
            std::push_heap(heap.begin(), heap.end());
        }
    }

    std::vector<double> votes(m.label_names.size(), 0.0);
    for (const Entry& e : heap) votes[knn.labels[e.second]] += 1.0;

    Prediction p;
    p.label = argmax_lowest(votes);
    p.distribution.assign(votes.size(), 0.0);
    for (std::size_t c = 0; c < votes.size(); ++c) {
        p.distribution[c] = votes[c] / static_cast<double>(k);
    }
    return p;
}

Prediction predict_tree(const Model& m, const std::vector<FeatureValue>& raw) {
    const auto row = normalized_row(m.schema, raw);
    const DecisionTreeState& tree = m.tree;
    int cur = 0;
    while (!tree.nodes[cur].leaf) {
        const TreeNode& node = tree.nodes[cur];
        const std::size_t f = static_cast<std::size_t>(node.feature);
        int next = -1;
        if (m.schema.is_numeric(f)) {
            next = (row[f].num <= node.threshold) ? node.children[0] : node.children[1];
        } else {
            const int code = row[f].cat;
            if (code >= 0 && code < static_cast<int>(node.children.size())) {
                next = node.children[code];
            }
        }
        if (next < 0) break;  // missing branch: answer with this node's majority
        cur = next;
    }
    const TreeNode& node = tree.nodes[cur];
    Prediction p;
    p.label = node.majority;
    p.distribution = node.distribution;
    return p;
}

}  // namespace

Model train_subset(Algorithm alg, const Dataset& ds,
                   const std::vector<std::size_t>& idx, const Hyperparams& hp) {
    if (idx.empty()) throw ValidationError("train: empty dataset");
    Model m;
    m.algorithm = alg;
    m.hyperparams = hp;
    m.schema = ds.schema_with_stats(idx);
    m.label_names = ds.label_names;
    switch (alg) {
        case Algorithm::ZeroR: train_zeror(m, ds, idx); break;
        case Algorithm::NaiveBayes: train_naive_bayes(m, ds, idx); break;
        case Algorithm::Knn: train_knn(m, ds, idx); break;
        case Algorithm::DecisionTree: train_tree(m, ds, idx); break;
    }
    return m;
}

Model train(Algorithm alg, const Dataset& ds, const Hyperparams& hp) {
    std::vector<std::size_t> all(ds.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return train_subset(alg, ds, all, hp);
}

Prediction predict(const Model& m, const std::vector<FeatureValue>& raw_row) {
    switch (m.algorithm) {
        case Algorithm::ZeroR: return predict_zeror(m);
        case Algorithm::NaiveBayes: return predict_naive_bayes(m, raw_row);
        case Algorithm::Knn: return predict_knn(m, raw_row);
        case Algorithm::DecisionTree: return predict_tree(m, raw_row);
    }
    throw InvariantError("predict: unknown algorithm tag");
}

}  // namespace edgesim
