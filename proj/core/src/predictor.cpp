#include "edgesim/predictor.hpp"

#include <cmath>

#include "edgesim/errors.hpp"

namespace edgesim {

DeployedPredictor train_pipeline(const std::vector<TraceRecord>& trace,
                                 const PipelineParams& params) {
    params.dbscan.validate();
    const auto points = snapshot_positions(trace, params.snapshot_s);
    const ClusteringResult clustering = dbscan(points, params.dbscan);
    if (clustering.zones.empty()) {
        throw ValidationError("no dense areas: clustering produced zero zones");
    }

    DeployedPredictor pred;
    pred.zones = {params.dbscan.eps_km, clustering.zones};
    pred.dbscan = params.dbscan;
    pred.snapshot_s = params.snapshot_s;
    pred.prewarm_ttl_s = params.prewarm_ttl_s;
    pred.share_cap = params.share_cap;
    pred.seed = params.seed;

    std::vector<TraceRecord> labeled = trace;
    label_trace(labeled, pred.zones);
    const Dataset ds = encode(labeled, {params.include_ue_id});
    pred.model = train(params.algorithm, ds, params.hyperparams);
    return pred;
}

std::function<void(MecSim&, const TraceRecord&)> make_prewarm_hook(
    const DeployedPredictor& pred) {
    // zones and model are captured by reference; the caller keeps the bundle
    // alive for the duration of the run
    return [&pred](MecSim& sim, const TraceRecord& r) {
        MecSim::UeRuntime& u = sim.ue_mutable(r.ue_id);
        const std::optional<int> zone = assign_zone(pred.zones, u.pos);
        const bool entered = zone.has_value() && !u.zone.has_value();
        u.zone = zone;
        if (!entered || pred.share_cap <= 0) return;

        const auto row = encode_features(
            pred.model.schema, r.time_s, u.pos.lat, u.pos.lon, u.enb,
            static_cast<double>(u.last_uplink_kbps),
            static_cast<double>(u.last_downlink_kbps), zone_label(zone), r.ue_id);
        const Prediction p = predict(pred.model, row);
        const auto kind = parse_service_name(pred.model.label_names[p.label]);
        if (!kind) return;  // model trained on labels that are not services
        sim.ensure_shared_instance(u.ec, *kind, static_cast<double>(r.time_s));
    };
}

RunStat make_run_stat(const std::vector<double>& samples) {
    RunStat s;
    s.per_run = samples;
    const double n = static_cast<double>(samples.size());
    if (samples.empty()) return s;
    for (double v : samples) s.mean += v;
    s.mean /= n;
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double v : samples) ss += (v - s.mean) * (v - s.mean);
        s.ci95 = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return s;
}

namespace {

ScenarioAggregate aggregate_runs(const std::vector<MecRunSummary>& runs) {
    auto collect = [&](auto getter) {
        std::vector<double> vals;
        vals.reserve(runs.size());
        for (const MecRunSummary& s : runs) vals.push_back(getter(s));
        return make_run_stat(vals);
    };
    ScenarioAggregate agg;
    agg.offloading_request = collect([](const MecRunSummary& s) {
        return static_cast<double>(s.count(MecEventKind::OffloadingRequest));
    });
    agg.offloading_success = collect([](const MecRunSummary& s) {
        return static_cast<double>(s.count(MecEventKind::OffloadingSuccess));
    });
    agg.offloading_failure = collect([](const MecRunSummary& s) {
        return static_cast<double>(s.count(MecEventKind::OffloadingFailure));
    });
    agg.migration_triggered = collect([](const MecRunSummary& s) {
        return static_cast<double>(s.count(MecEventKind::Migration));
    });
    agg.migration_success = collect([](const MecRunSummary& s) {
        return static_cast<double>(s.count(MecEventKind::MigrationSuccess));
    });
    agg.migration_failure = collect([](const MecRunSummary& s) {
        return static_cast<double>(s.count(MecEventKind::MigrationFailure));
    });
    agg.migration_aborted = collect([](const MecRunSummary& s) {
        return static_cast<double>(s.count(MecEventKind::MigrationAborted));
    });
    agg.migration_ongoing = collect([](const MecRunSummary& s) {
        return static_cast<double>(s.ongoing_migrations);
    });
    agg.success_rate = collect(
        [](const MecRunSummary& s) { return s.offloading_success_rate(); });
    return agg;
}

}  // namespace

ComparisonReport compare_experiment(const SimConfig& cfg, const MecConfig& mec_cfg,
                                    const DeployedPredictor& pred, int n_runs,
                                    std::uint64_t base_seed) {
    if (n_runs < 2) throw ValidationError("compare: n_runs must be >= 2");
    cfg.validate();
    mec_cfg.validate();

    std::vector<MecRunSummary> baseline_runs, predicted_runs;
    const auto hook = make_prewarm_hook(pred);
    const SharedParams shared{pred.share_cap,
                              static_cast<double>(pred.prewarm_ttl_s)};

    for (int i = 0; i < n_runs; ++i) {
        // same mobility pattern every run, fresh service usage per run
        const std::uint64_t service_seed = mix_seed(base_seed, 0x500 + i);
        const TraceOutput run = generate_trace(cfg, cfg.seed, service_seed);
        const std::uint64_t mec_seed = mix_seed(base_seed, 0x900 + i);

        const MecRunResult base =
            run_mec(mec_cfg, run.topology, run.records, run.sessions,
                    cfg.sim_duration_s, mec_seed);
        const MecRunResult with_pred =
            run_mec(mec_cfg, run.topology, run.records, run.sessions,
                    cfg.sim_duration_s, mec_seed, hook, shared);
        baseline_runs.push_back(base.summary);
        predicted_runs.push_back(with_pred.summary);
    }

    ComparisonReport report;
    report.runs = n_runs;
    report.mobility_seed = cfg.seed;
    report.baseline = aggregate_runs(baseline_runs);
    report.predicted = aggregate_runs(predicted_runs);
    report.delta_success_rate_pp =
        (report.predicted.success_rate.mean - report.baseline.success_rate.mean) *
        100.0;
    if (report.baseline.migration_success.mean > 0.0) {
        report.migration_success_ratio = report.predicted.migration_success.mean /
                                         report.baseline.migration_success.mean;
    }
    return report;
}

}  // namespace edgesim
