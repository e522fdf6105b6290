#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "edgesim/classifiers.hpp"
#include "edgesim/dbscan.hpp"
#include "edgesim/mec.hpp"
#include "edgesim/tracegen.hpp"

namespace edgesim {

// Trained predictor plus deployment parameters, shippable as one bundle.
struct DeployedPredictor {
    ZoneModel zones;
    Model model;
    long long prewarm_ttl_s = 300;
    int share_cap = 10;
    DbscanParams dbscan;      // provenance
    long long snapshot_s = -1;
    std::uint64_t seed = 0;
};

struct PipelineParams {
    DbscanParams dbscan{};
    long long snapshot_s = -1;  // -1: cluster the last known position overall
    Algorithm algorithm = Algorithm::Knn;
    Hyperparams hyperparams{};
    long long prewarm_ttl_s = 300;
    int share_cap = 10;
    bool include_ue_id = false;
    std::uint64_t seed = 0;
};

// cluster snapshot -> zones -> label trace -> encode -> train -> bundle.
// Throws ValidationError("no dense areas...") when clustering finds nothing.
DeployedPredictor train_pipeline(const std::vector<TraceRecord>& trace,
                                 const PipelineParams& params);

// Movement hook: on a none->some zone transition, predict the service from
// the UE's current features (time, position, eNB, last observed datarates,
// zone) and pre-place a shared instance at the serving EC.
std::function<void(MecSim&, const TraceRecord&)> make_prewarm_hook(
    const DeployedPredictor& pred);

struct RunStat {
    double mean = 0.0;
    double ci95 = 0.0;
    std::vector<double> per_run;
};

struct ScenarioAggregate {
    RunStat offloading_request;
    RunStat offloading_success;
    RunStat offloading_failure;
    RunStat migration_triggered;
    RunStat migration_success;
    RunStat migration_failure;
    RunStat migration_aborted;
    RunStat migration_ongoing;
    RunStat success_rate;  // successes / requests per run
};

struct ComparisonReport {
    int runs = 0;
    std::uint64_t mobility_seed = 0;
    ScenarioAggregate baseline;
    ScenarioAggregate predicted;
    double delta_success_rate_pp = 0.0;  // percentage points
    std::optional<double> migration_success_ratio;  // predicted/baseline means
};

// One mobility pattern (cfg.seed) reused across all runs; each run draws a
// distinct service seed from base_seed and replays the identical stream with
// the predictor off and on.
ComparisonReport compare_experiment(const SimConfig& cfg, const MecConfig& mec_cfg,
                                    const DeployedPredictor& pred, int n_runs,
                                    std::uint64_t base_seed);

RunStat make_run_stat(const std::vector<double>& samples);

}  // namespace edgesim
