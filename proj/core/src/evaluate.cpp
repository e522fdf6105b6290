#include "edgesim/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "edgesim/errors.hpp"
#include "edgesim/rng.hpp"

namespace edgesim {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void fill_rates(EvalReport& rep) {
    const std::size_t c = rep.confusion.size();
    rep.precision.assign(c, 0.0);
    rep.recall.assign(c, 0.0);
    long long correct = 0, total = 0;
    for (std::size_t i = 0; i < c; ++i) {
        long long row = 0, col = 0;
        for (std::size_t j = 0; j < c; ++j) {
            row += rep.confusion[i][j];
            col += rep.confusion[j][i];
            total += rep.confusion[i][j];
        }
        correct += rep.confusion[i][i];
        rep.recall[i] = row > 0 ? static_cast<double>(rep.confusion[i][i]) / row : 0.0;
        rep.precision[i] = col > 0 ? static_cast<double>(rep.confusion[i][i]) / col : 0.0;
    }
    rep.accuracy = total > 0 ? static_cast<double>(correct) / total : 0.0;
}

}  // namespace

std::vector<int> stratified_folds(const Dataset& ds, int k_folds, std::uint64_t seed) {
    const std::size_t n = ds.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(mix_seed(seed, 0x666f6c64));  // "fold"
    for (std::size_t i = n; i > 1; --i) {  // Fisher-Yates
        std::swap(order[i - 1], order[rng.index(i)]);
    }

    // deal each class round-robin, rotating the starting fold by class index
    std::vector<int> fold_of(n, 0);
    const int classes = static_cast<int>(ds.label_names.size());
    std::vector<int> next_fold(classes);
    for (int c = 0; c < classes; ++c) next_fold[c] = c % k_folds;
    for (std::size_t i : order) {
        const int c = ds.labels[i];
        fold_of[i] = next_fold[c];
        next_fold[c] = (next_fold[c] + 1) % k_folds;
    }
    return fold_of;
}

EvalReport cross_validate(Algorithm alg, const Dataset& ds, int k_folds,
                          const Hyperparams& hp, std::uint64_t seed) {
    if (k_folds < 2) throw ValidationError("cross_validate: k_folds must be >= 2");
    if (ds.size() < static_cast<std::size_t>(k_folds)) {
        throw ValidationError("cross_validate: fewer instances than folds");
    }

    const auto fold_of = stratified_folds(ds, k_folds, seed);
    const std::size_t classes = ds.label_names.size();

    EvalReport rep;
    rep.label_names = ds.label_names;
    rep.confusion.assign(classes, std::vector<long long>(classes, 0));

    for (int f = 0; f < k_folds; ++f) {
        std::vector<std::size_t> train_idx, val_idx;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            (fold_of[i] == f ? val_idx : train_idx).push_back(i);
        }

        const auto t0 = std::chrono::steady_clock::now();
        const Model model = train_subset(alg, ds, train_idx, hp);
        rep.train_wall_s += seconds_since(t0);

        const auto t1 = std::chrono::steady_clock::now();
        long long fold_correct = 0;
        for (std::size_t i : val_idx) {
            const Prediction p = predict(model, ds.rows[i]);
            rep.confusion[ds.labels[i]][p.label] += 1;
            if (p.label == ds.labels[i]) ++fold_correct;
        }
        rep.test_wall_s += seconds_since(t1);
        rep.fold_accuracies.push_back(
            val_idx.empty() ? 0.0
                            : static_cast<double>(fold_correct) / val_idx.size());
    }
    fill_rates(rep);
    return rep;
}

EvalReport evaluate_model(const Model& model, const std::vector<TraceRecord>& records) {
    EvalReport rep;
    rep.label_names = model.label_names;
    auto label_id = [&rep](const std::string& name) {
        for (std::size_t i = 0; i < rep.label_names.size(); ++i) {
            if (rep.label_names[i] == name) return static_cast<int>(i);
        }
        rep.label_names.push_back(name);
        return static_cast<int>(rep.label_names.size()) - 1;
    };

    std::vector<std::pair<int, int>> pairs;  // (true, predicted)
    const auto t0 = std::chrono::steady_clock::now();
    for (const TraceRecord& r : records) {
        if (!r.service) continue;
        const auto row = encode_features(
            model.schema, r.time_s, r.lat, r.lon, r.enodeb_id,
            static_cast<double>(r.datarate_uplink_kbps),
            static_cast<double>(r.datarate_downlink_kbps), r.zone, r.ue_id);
        const Prediction p = predict(model, row);
        pairs.emplace_back(label_id(service_name(*r.service)), p.label);
    }
    rep.test_wall_s = seconds_since(t0);
    if (pairs.empty()) throw ValidationError("evaluate: no labeled rows in trace");

    const std::size_t classes = rep.label_names.size();
    rep.confusion.assign(classes, std::vector<long long>(classes, 0));
    for (const auto& [truth, pred] : pairs) rep.confusion[truth][pred] += 1;
    fill_rates(rep);
    return rep;
}

BenchReport benchmark(const std::vector<Algorithm>& algorithms, const Dataset& ds,
                      int repetitions, int k_folds, const Hyperparams& hp,
                      std::uint64_t seed) {
    if (repetitions < 1) throw ValidationError("benchmark: repetitions must be >= 1");
    BenchReport report;
    report.repetitions = repetitions;
    report.k_folds = k_folds;

    for (Algorithm alg : algorithms) {
        BenchEntry entry;
        entry.algorithm = alg;
        std::vector<double> times;
        for (int rep = 0; rep < repetitions; ++rep) {
            const EvalReport r =
                cross_validate(alg, ds, k_folds, hp, mix_seed(seed, 7700 + rep));
            entry.accuracies.push_back(r.accuracy);
            entry.mean_train_s += r.train_wall_s;
            entry.mean_test_s += r.test_wall_s;
            times.push_back(r.train_wall_s + r.test_wall_s);
        }
        const double n = static_cast<double>(repetitions);
        entry.mean_train_s /= n;
        entry.mean_test_s /= n;
        double acc_mean = 0.0, time_mean = 0.0;
        for (double a : entry.accuracies) acc_mean += a;
        for (double t : times) time_mean += t;
        acc_mean /= n;
        time_mean /= n;
        entry.mean_accuracy = acc_mean;
        if (repetitions > 1) {
            double acc_ss = 0.0, time_ss = 0.0;
            for (double a : entry.accuracies) acc_ss += (a - acc_mean) * (a - acc_mean);
            for (double t : times) time_ss += (t - time_mean) * (t - time_mean);
            entry.ci95_accuracy = 1.96 * std::sqrt(acc_ss / (n - 1.0)) / std::sqrt(n);
            entry.ci95_time = 1.96 * std::sqrt(time_ss / (n - 1.0)) / std::sqrt(n);
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace edgesim
