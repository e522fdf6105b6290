// edgesim: deterministic mobile-edge service-usage simulator and experiment
// harness. One binary, batch subcommands: generate, cluster, train, evaluate,
// bench, simulate, compare, report.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgesim/errors.hpp"
#include "edgesim/io.hpp"
#include "edgesim/tracegen.hpp"
#include "edgesim/version.hpp"

namespace fs = std::filesystem;
using njson = nlohmann::ordered_json;
using namespace edgesim;

namespace {

// exit codes: 0 ok, 2 validation, 3 io, 4 internal invariant
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

std::string resolve(const std::string& out_dir, const std::string& path) {
    if (path.empty() || fs::path(path).is_absolute()) return path;
    return (fs::path(out_dir) / path).lexically_normal().string();
}

// every artifact-producing command writes <primary output>.manifest.json with
// enough to reproduce the run: argv, resolved config, seeds, io digests
class ManifestBuilder {
public:
    ManifestBuilder(std::vector<std::string> argv)
        : t0_(std::chrono::steady_clock::now()) {
        doc_["tool"] = "edgesim";
        doc_["version"] = kVersion;
        doc_["command"] = std::move(argv);
    }

    void set_config(const std::string& key, const std::string& json_text) {
        doc_["config"][key] = njson::parse(json_text);
    }
    void set_seed(const std::string& key, std::uint64_t value) {
        doc_["seeds"][key] = value;
    }
    void add_input(const std::string& path) { inputs_.push_back(path); }
    void add_output(const std::string& path) { outputs_.push_back(path); }

    void write(const std::string& primary_output) {
        njson inputs = njson::array();
        for (const std::string& p : inputs_) {
            inputs.push_back(njson{{"path", p}, {"digest", digest_file(p)}});
        }
        njson outputs = njson::array();
        for (const std::string& p : outputs_) {
            outputs.push_back(njson{{"path", p}, {"digest", digest_file(p)}});
        }
        doc_["inputs"] = std::move(inputs);
        doc_["outputs"] = std::move(outputs);
        doc_["wall_s"] = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0_)
                             .count();
        write_text_atomic(primary_output + ".manifest.json", doc_.dump(2) + "\n");
    }

private:
    njson doc_;
    std::vector<std::string> inputs_, outputs_;
    std::chrono::steady_clock::time_point t0_;
};

SimConfig load_sim_config(const std::string& path, bool seed_given,
                          std::uint64_t seed) {
    SimConfig cfg = path.empty() ? SimConfig{} : read_sim_config(path);
    if (seed_given) cfg.seed = seed;  // --seed overrides the file
    cfg.validate();
    return cfg;
}

std::vector<Algorithm> parse_algo_list(const std::string& csv) {
    std::vector<Algorithm> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t c = csv.find(',', start);
        const std::string tok =
            c == std::string::npos ? csv.substr(start) : csv.substr(start, c - start);
        if (!tok.empty()) {
            const auto alg = parse_algorithm(tok);
            if (!alg) throw ValidationError("unknown algorithm '" + tok + "'");
            out.push_back(*alg);
        }
        if (c == std::string::npos) break;
        start = c + 1;
    }
    if (out.empty()) throw ValidationError("empty algorithm list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> raw_args(argv + 1, argv + argc);

    CLI::App app{"deterministic MEC service-usage simulator and experiment harness"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    std::string out_dir = ".";
    app.add_option("--out-dir", out_dir, "directory that relative paths resolve against")
        ->capture_default_str();

    // generate ---------------------------------------------------------------
    auto* cmd_generate = app.add_subcommand("generate", "generate a synthetic trace");
    std::string gen_config, gen_trace = "trace.csv", gen_sessions = "sessions.csv";
    std::string gen_topology = "topology.json";
    std::uint64_t gen_seed = 0, gen_mob_seed = 0, gen_svc_seed = 0;
    cmd_generate->add_option("--config", gen_config, "simulation config JSON");
    auto* gen_seed_opt = cmd_generate->add_option("--seed", gen_seed, "override config seed");
    auto* gen_mob_opt =
        cmd_generate->add_option("--mobility-seed", gen_mob_seed,
                                 "mobility seed (defaults to the config seed)");
    auto* gen_svc_opt =
        cmd_generate->add_option("--service-seed", gen_svc_seed,
                                 "service-usage seed (defaults to the config seed)");
    cmd_generate->add_option("--trace", gen_trace, "output trace CSV")->capture_default_str();
    cmd_generate->add_option("--sessions", gen_sessions, "output sessions CSV")
        ->capture_default_str();
    cmd_generate->add_option("--topology", gen_topology, "output topology JSON")
        ->capture_default_str();

    // cluster ----------------------------------------------------------------
    auto* cmd_cluster = app.add_subcommand("cluster", "detect dense zones via DBSCAN");
    std::string clu_trace, clu_zones = "zones.json", clu_labeled = "labeled.csv";
    double clu_eps = 0.5;
    int clu_min_pts = 25;
    long long clu_snapshot = -1;
    cmd_cluster->add_option("--trace", clu_trace, "input trace CSV")->required();
    cmd_cluster->add_option("--eps-km", clu_eps, "DBSCAN eps in km")->capture_default_str();
    cmd_cluster->add_option("--min-pts", clu_min_pts, "DBSCAN min points")
        ->capture_default_str();
    cmd_cluster->add_option("--snapshot", clu_snapshot,
                            "snapshot time seconds (-1: last known positions)")
        ->capture_default_str();
    cmd_cluster->add_option("--zones", clu_zones, "output zones JSON")->capture_default_str();
    cmd_cluster->add_option("--labeled", clu_labeled, "output relabeled trace CSV")
        ->capture_default_str();

    // train -------------------------------------------------------------------
    auto* cmd_train = app.add_subcommand("train", "train a classifier (or a predictor bundle)");
    std::string trn_trace, trn_algo = "knn", trn_out = "model.json", trn_bundle;
    bool trn_include_ue = false;
    Hyperparams trn_hp;
    double trn_eps = 0.5;
    int trn_min_pts = 25, trn_share_cap = 10;
    long long trn_snapshot = -1, trn_ttl = 300;
    std::uint64_t trn_seed = 0;
    cmd_train->add_option("--trace", trn_trace, "input trace CSV")->required();
    cmd_train->add_option("--algo", trn_algo, "zeror|nb|knn|tree")->capture_default_str();
    cmd_train->add_option("--out", trn_out, "output model JSON")->capture_default_str();
    cmd_train->add_flag("--include-ue-id", trn_include_ue, "add ue_id as a feature");
    cmd_train->add_option("--knn-k", trn_hp.knn_k)->capture_default_str();
    cmd_train->add_option("--nb-alpha", trn_hp.nb_alpha)->capture_default_str();
    cmd_train->add_option("--nb-var-floor", trn_hp.nb_var_floor)->capture_default_str();
    cmd_train->add_option("--tree-max-depth", trn_hp.tree_max_depth)->capture_default_str();
    cmd_train->add_option("--tree-min-leaf", trn_hp.tree_min_leaf)->capture_default_str();
    auto* trn_bundle_opt = cmd_train->add_option(
        "--bundle", trn_bundle,
        "run the full pipeline (cluster+label+train) and write a predictor bundle");
    cmd_train->add_option("--eps-km", trn_eps, "bundle: DBSCAN eps")->capture_default_str();
    cmd_train->add_option("--min-pts", trn_min_pts, "bundle: DBSCAN min points")
        ->capture_default_str();
    cmd_train->add_option("--snapshot", trn_snapshot, "bundle: clustering snapshot time")
        ->capture_default_str();
    cmd_train->add_option("--ttl", trn_ttl, "bundle: shared-instance TTL seconds")
        ->capture_default_str();
    cmd_train->add_option("--share-cap", trn_share_cap, "bundle: attachments per instance")
        ->capture_default_str();
    auto* trn_seed_opt = cmd_train->add_option("--seed", trn_seed, "bundle seed tag");

    // evaluate ----------------------------------------------------------------
    auto* cmd_eval = app.add_subcommand("evaluate", "apply a model to a labeled trace");
    std::string evl_model, evl_trace, evl_out = "eval.json";
    cmd_eval->add_option("--model", evl_model, "model JSON")->required();
    cmd_eval->add_option("--trace", evl_trace, "labeled trace CSV")->required();
    cmd_eval->add_option("--out", evl_out, "output report JSON")->capture_default_str();

    // bench -------------------------------------------------------------------
    auto* cmd_bench = app.add_subcommand("bench", "repeated cross-validation benchmark");
    std::string bch_trace, bch_algos = "zeror,nb,knn,tree";
    std::string bch_csv = "bench.csv", bch_json = "bench.json";
    int bch_reps = 5, bch_folds = 10;
    std::uint64_t bch_seed = 1;
    Hyperparams bch_hp;
    cmd_bench->add_option("--trace", bch_trace, "labeled trace CSV")->required();
    cmd_bench->add_option("--algos", bch_algos, "comma list of algorithms")
        ->capture_default_str();
    cmd_bench->add_option("--reps", bch_reps, "repetitions")->capture_default_str();
    cmd_bench->add_option("--folds", bch_folds, "cross-validation folds")
        ->capture_default_str();
    cmd_bench->add_option("--seed", bch_seed, "fold-seed base")->capture_default_str();
    cmd_bench->add_option("--out", bch_csv, "output CSV")->capture_default_str();
    cmd_bench->add_option("--json", bch_json, "output JSON")->capture_default_str();

    // simulate ------------------------------------------------------------------
    auto* cmd_sim = app.add_subcommand("simulate", "replay a trace through the MEC model");
    std::string sim_trace, sim_sessions, sim_topology, sim_mec_config;
    std::string sim_model, sim_zones, sim_events = "events.jsonl", sim_summary = "summary.json";
    long long sim_duration = -1, sim_ttl = 300;
    int sim_share_cap = 10;
    std::uint64_t sim_seed = 1;
    cmd_sim->add_option("--trace", sim_trace, "trace CSV")->required();
    cmd_sim->add_option("--sessions", sim_sessions, "sessions CSV")->required();
    cmd_sim->add_option("--topology", sim_topology, "topology JSON")->required();
    cmd_sim->add_option("--mec-config", sim_mec_config, "MEC config JSON");
    auto* sim_model_opt =
        cmd_sim->add_option("--predictor", sim_model, "model JSON enabling prewarm");
    auto* sim_zones_opt = cmd_sim->add_option("--zones", sim_zones, "zones JSON for prewarm");
    cmd_sim->add_option("--ttl", sim_ttl, "shared-instance TTL seconds")->capture_default_str();
    cmd_sim->add_option("--share-cap", sim_share_cap, "attachments per shared instance")
        ->capture_default_str();
    cmd_sim->add_option("--duration", sim_duration, "sim end time (-1: last trigger)")
        ->capture_default_str();
    cmd_sim->add_option("--seed", sim_seed, "placement rng seed")->capture_default_str();
    cmd_sim->add_option("--events", sim_events, "output event log JSONL")
        ->capture_default_str();
    cmd_sim->add_option("--summary", sim_summary, "output summary JSON")
        ->capture_default_str();

    // compare ---------------------------------------------------------------------
    auto* cmd_cmp = app.add_subcommand("compare", "paired baseline/predictor experiment");
    std::string cmp_config, cmp_mec_config, cmp_predictor, cmp_out = "report.json";
    int cmp_runs = 10;
    std::uint64_t cmp_seed = 0;
    cmd_cmp->add_option("--config", cmp_config, "simulation config JSON");
    cmd_cmp->add_option("--mec-config", cmp_mec_config, "MEC config JSON");
    cmd_cmp->add_option("--predictor", cmp_predictor, "predictor bundle JSON")->required();
    cmd_cmp->add_option("--runs", cmp_runs, "paired runs")->capture_default_str();
    auto* cmp_seed_opt =
        cmd_cmp->add_option("--seed", cmp_seed, "override config seed (mobility + base)");
    cmd_cmp->add_option("--out", cmp_out, "output report JSON")->capture_default_str();

    // report -------------------------------------------------------------------
    auto* cmd_report = app.add_subcommand("report", "emit plot-ready figure CSVs");
    std::string rpt_bench, rpt_comparison;
    cmd_report->add_option("--bench", rpt_bench, "bench JSON -> fig2a/fig2c CSVs");
    cmd_report->add_option("--comparison", rpt_comparison,
                           "comparison JSON -> fig3a/fig3b CSVs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (cmd_generate->parsed()) {
            ManifestBuilder manifest(raw_args);
            const std::string cfg_path = resolve(out_dir, gen_config);
            if (!gen_config.empty()) manifest.add_input(cfg_path);
            SimConfig cfg = load_sim_config(gen_config.empty() ? "" : cfg_path,
                                            !gen_seed_opt->empty(), gen_seed);
            const std::uint64_t mob = gen_mob_opt->empty() ? cfg.seed : gen_mob_seed;
            const std::uint64_t svc = gen_svc_opt->empty() ? cfg.seed : gen_svc_seed;
            manifest.set_config("sim", sim_config_to_json_text(cfg));
            manifest.set_seed("config", cfg.seed);
            manifest.set_seed("mobility", mob);
            manifest.set_seed("service", svc);

            const TraceOutput out = generate_trace(cfg, mob, svc);
            const std::string trace_path = resolve(out_dir, gen_trace);
            const std::string sessions_path = resolve(out_dir, gen_sessions);
            const std::string topology_path = resolve(out_dir, gen_topology);
            write_trace_csv(trace_path, out.records);
            write_sessions_csv(sessions_path, out.sessions);
            write_topology_json(topology_path, out.topology);
            manifest.add_output(trace_path);
            manifest.add_output(sessions_path);
            manifest.add_output(topology_path);
            manifest.write(trace_path);
            std::printf("generate: %zu records, %zu sessions -> %s\n",
                        out.records.size(), out.sessions.size(), trace_path.c_str());
        } else if (cmd_cluster->parsed()) {
            ManifestBuilder manifest(raw_args);
            const std::string trace_path = resolve(out_dir, clu_trace);
            manifest.add_input(trace_path);
            auto records = read_trace_csv(trace_path);

            const DbscanParams params{clu_eps, clu_min_pts};
            const auto points = snapshot_positions(records, clu_snapshot);
            const ClusteringResult clustering = dbscan(points, params);
            const ZoneModel zones{clu_eps, clustering.zones};
            label_trace(records, zones);

            const std::string zones_path = resolve(out_dir, clu_zones);
            const std::string labeled_path = resolve(out_dir, clu_labeled);
            write_zones_json(zones_path, zones);
            write_trace_csv(labeled_path, records);
            manifest.add_output(zones_path);
            manifest.add_output(labeled_path);
            manifest.write(zones_path);
            std::printf("cluster: %zu points -> %zu zones\n", points.size(),
                        zones.zones.size());
        } else if (cmd_train->parsed()) {
            ManifestBuilder manifest(raw_args);
            const std::string trace_path = resolve(out_dir, trn_trace);
            manifest.add_input(trace_path);
            const auto records = read_trace_csv(trace_path);
            const auto alg = parse_algorithm(trn_algo);
            if (!alg) throw ValidationError("unknown algorithm '" + trn_algo + "'");

            if (!trn_bundle_opt->empty()) {
                PipelineParams params;
                params.dbscan = {trn_eps, trn_min_pts};
                params.snapshot_s = trn_snapshot;
                params.algorithm = *alg;
                params.hyperparams = trn_hp;
                params.prewarm_ttl_s = trn_ttl;
                params.share_cap = trn_share_cap;
                params.include_ue_id = trn_include_ue;
                params.seed = trn_seed_opt->empty() ? 0 : trn_seed;
                const DeployedPredictor pred = train_pipeline(records, params);
                const std::string bundle_path = resolve(out_dir, trn_bundle);
                write_predictor_json(bundle_path, pred);
                manifest.add_output(bundle_path);
                manifest.set_seed("bundle", params.seed);
                manifest.write(bundle_path);
                std::printf("train: %zu zones, %s bundle -> %s\n",
                            pred.zones.zones.size(),
                            algorithm_name(*alg).c_str(), bundle_path.c_str());
            } else {
                const Dataset ds = encode(records, {trn_include_ue});
                const Model model = train(*alg, ds, trn_hp);
                const std::string model_path = resolve(out_dir, trn_out);
                write_model_json(model_path, model);
                manifest.add_output(model_path);
                manifest.write(model_path);
                std::printf("train: %zu instances, %zu classes -> %s\n", ds.size(),
                            ds.label_names.size(), model_path.c_str());
            }
        } else if (cmd_eval->parsed()) {
            ManifestBuilder manifest(raw_args);
            const std::string model_path = resolve(out_dir, evl_model);
            const std::string trace_path = resolve(out_dir, evl_trace);
            manifest.add_input(model_path);
            manifest.add_input(trace_path);
            const Model model = read_model_json(model_path);
            const auto records = read_trace_csv(trace_path);
            const EvalReport report = evaluate_model(model, records);
            const std::string out_path = resolve(out_dir, evl_out);
            write_eval_report_json(out_path, report);
            manifest.add_output(out_path);
            manifest.write(out_path);
            std::printf("evaluate: accuracy %.4f -> %s\n", report.accuracy,
                        out_path.c_str());
        } else if (cmd_bench->parsed()) {
            ManifestBuilder manifest(raw_args);
            const std::string trace_path = resolve(out_dir, bch_trace);
            manifest.add_input(trace_path);
            manifest.set_seed("bench", bch_seed);
            const auto records = read_trace_csv(trace_path);
            const Dataset ds = encode(records, {});
            const auto algos = parse_algo_list(bch_algos);
            const BenchReport report =
                benchmark(algos, ds, bch_reps, bch_folds, bch_hp, bch_seed);
            const std::string csv_path = resolve(out_dir, bch_csv);
            const std::string json_path = resolve(out_dir, bch_json);
            write_bench_csv(csv_path, report);
            write_bench_json(json_path, report);
            manifest.add_output(csv_path);
            manifest.add_output(json_path);
            manifest.write(csv_path);
            for (const BenchEntry& e : report.entries) {
                std::printf("bench: %-13s accuracy %.4f +/- %.4f\n",
                            algorithm_name(e.algorithm).c_str(), e.mean_accuracy,
                            e.ci95_accuracy);
            }
        } else if (cmd_sim->parsed()) {
            ManifestBuilder manifest(raw_args);
            const std::string trace_path = resolve(out_dir, sim_trace);
            const std::string sessions_path = resolve(out_dir, sim_sessions);
            const std::string topology_path = resolve(out_dir, sim_topology);
            manifest.add_input(trace_path);
            manifest.add_input(sessions_path);
            manifest.add_input(topology_path);

            MecConfig mec_cfg;
            if (!sim_mec_config.empty()) {
                const std::string mec_path = resolve(out_dir, sim_mec_config);
                manifest.add_input(mec_path);
                mec_cfg = read_mec_config(mec_path);
            }
            manifest.set_config("mec", mec_config_to_json_text(mec_cfg));
            manifest.set_seed("placement", sim_seed);

            const auto records = read_trace_csv(trace_path);
            const auto sessions = read_sessions_csv(sessions_path);
            const Topology topo = read_topology_json(topology_path);

            DeployedPredictor pred;
            std::function<void(MecSim&, const TraceRecord&)> hook;
            SharedParams shared;
            if (!sim_model_opt->empty()) {
                if (sim_zones_opt->empty()) {
                    throw ValidationError("--predictor requires --zones");
                }
                const std::string model_path = resolve(out_dir, sim_model);
                const std::string zones_path = resolve(out_dir, sim_zones);
                manifest.add_input(model_path);
                manifest.add_input(zones_path);
                pred.model = read_model_json(model_path);
                pred.zones = read_zones_json(zones_path);
                pred.prewarm_ttl_s = sim_ttl;
                pred.share_cap = sim_share_cap;
                hook = make_prewarm_hook(pred);
                shared = {sim_share_cap, static_cast<double>(sim_ttl)};
            }

            const MecRunResult result =
                run_mec(mec_cfg, topo, records, sessions, sim_duration, sim_seed,
                        hook, shared);
            const std::string events_path = resolve(out_dir, sim_events);
            const std::string summary_path = resolve(out_dir, sim_summary);
            write_events_jsonl(events_path, result.events);
            write_mec_summary_json(summary_path, result.summary);
            manifest.add_output(events_path);
            manifest.add_output(summary_path);
            manifest.write(events_path);
            std::printf(
                "simulate: %lld requests, %lld success, %lld failure, %lld ongoing\n",
                result.summary.count(MecEventKind::OffloadingRequest),
                result.summary.count(MecEventKind::OffloadingSuccess),
                result.summary.count(MecEventKind::OffloadingFailure),
                result.summary.ongoing_migrations);
        } else if (cmd_cmp->parsed()) {
            ManifestBuilder manifest(raw_args);
            const std::string pred_path = resolve(out_dir, cmp_predictor);
            manifest.add_input(pred_path);
            std::string cfg_path;
            if (!cmp_config.empty()) {
                cfg_path = resolve(out_dir, cmp_config);
                manifest.add_input(cfg_path);
            }
            SimConfig cfg = load_sim_config(cfg_path, !cmp_seed_opt->empty(), cmp_seed);
            MecConfig mec_cfg;
            if (!cmp_mec_config.empty()) {
                const std::string mec_path = resolve(out_dir, cmp_mec_config);
                manifest.add_input(mec_path);
                mec_cfg = read_mec_config(mec_path);
            }
            manifest.set_config("sim", sim_config_to_json_text(cfg));
            manifest.set_config("mec", mec_config_to_json_text(mec_cfg));
            manifest.set_seed("base", cfg.seed);

            const DeployedPredictor pred = read_predictor_json(pred_path);
            const ComparisonReport report =
                compare_experiment(cfg, mec_cfg, pred, cmp_runs, cfg.seed);
            const std::string out_path = resolve(out_dir, cmp_out);
            write_comparison_json(out_path, report);
            manifest.add_output(out_path);
            manifest.write(out_path);
            std::printf(
                "compare: success rate %.1f%% -> %.1f%% (%+.2f pp), migration "
                "success %.1f -> %.1f\n",
                report.baseline.success_rate.mean * 100.0,
                report.predicted.success_rate.mean * 100.0,
                report.delta_success_rate_pp, report.baseline.migration_success.mean,
                report.predicted.migration_success.mean);
        } else if (cmd_report->parsed()) {
            if (rpt_bench.empty() && rpt_comparison.empty()) {
                throw ValidationError("report: give --bench and/or --comparison");
            }
            ManifestBuilder manifest(raw_args);
            std::vector<std::string> written;
            if (!rpt_bench.empty()) {
                const std::string bench_path = resolve(out_dir, rpt_bench);
                manifest.add_input(bench_path);
                const BenchReport bench = read_bench_json(bench_path);
                for (const std::string& p : write_fig2_csvs(out_dir, bench)) {
                    manifest.add_output(p);
                    written.push_back(p);
                }
            }
            if (!rpt_comparison.empty()) {
                const std::string cmp_path = resolve(out_dir, rpt_comparison);
                manifest.add_input(cmp_path);
                const ComparisonReport cmp = read_comparison_json(cmp_path);
                for (const std::string& p : write_fig3_csvs(out_dir, cmp)) {
                    manifest.add_output(p);
                    written.push_back(p);
                }
            }
            manifest.write((fs::path(out_dir) / "report").string());
            for (const std::string& p : written) std::printf("report: %s\n", p.c_str());
        }
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const InvariantError& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
    return 0;
}
