#pragma once

#include <string>
#include <vector>

#include "edgesim/config.hpp"
#include "edgesim/evaluate.hpp"
#include "edgesim/mec.hpp"
#include "edgesim/predictor.hpp"
#include "edgesim/topology.hpp"
#include "edgesim/trace.hpp"

namespace edgesim {

// ---- primitives ---------------------------------------------------------

std::string read_text(const std::string& path);           // IoError if missing
void write_text_atomic(const std::string& path, const std::string& content);

std::string fnv1a64_hex(const std::string& bytes);
std::string digest_file(const std::string& path);  // "fnv1a64:<hex>"

double round_sig6(double v);        // nearest double to the %.6g rendering
std::string format_sig6(double v);  // %.6g

// ---- trace + sessions CSV ------------------------------------------------

inline constexpr const char* kTraceCsvHeader =
    "time,ue_id,service_name,latitude,longitude,enodeb_id,datarate_uplink,"
    "datarate_downlink,zone";
inline constexpr const char* kSessionsCsvHeader =
    "ue_id,service_name,start,end,uplink,downlink";

std::string trace_to_csv(const std::vector<TraceRecord>& records);
std::vector<TraceRecord> trace_from_csv(const std::string& content);
void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& records);
std::vector<TraceRecord> read_trace_csv(const std::string& path);

std::string sessions_to_csv(const std::vector<ServiceSession>& sessions);
std::vector<ServiceSession> sessions_from_csv(const std::string& content);
void write_sessions_csv(const std::string& path,
                        const std::vector<ServiceSession>& sessions);
std::vector<ServiceSession> read_sessions_csv(const std::string& path);

// ---- structured documents -------------------------------------------------

void write_topology_json(const std::string& path, const Topology& topo);
Topology read_topology_json(const std::string& path);

void write_zones_json(const std::string& path, const ZoneModel& zones);
ZoneModel read_zones_json(const std::string& path);

void write_model_json(const std::string& path, const Model& model);
Model read_model_json(const std::string& path);

void write_predictor_json(const std::string& path, const DeployedPredictor& pred);
DeployedPredictor read_predictor_json(const std::string& path);

// ---- configuration ---------------------------------------------------------

// Unknown keys are rejected by name; an empty or "{}" document yields the
// full defaults; cross-field invariants enforced via validate().
SimConfig parse_sim_config_text(const std::string& text);
MecConfig parse_mec_config_text(const std::string& text);
SimConfig read_sim_config(const std::string& path);
MecConfig read_mec_config(const std::string& path);

// fully resolved config back to JSON (round-trips through the parser)
std::string sim_config_to_json_text(const SimConfig& cfg);
std::string mec_config_to_json_text(const MecConfig& cfg);

// ---- MEC outputs -----------------------------------------------------------

std::string events_to_jsonl(const std::vector<MecEvent>& events);
void write_events_jsonl(const std::string& path, const std::vector<MecEvent>& events);
void write_mec_summary_json(const std::string& path, const MecRunSummary& summary);

// ---- reports ----------------------------------------------------------------

void write_eval_report_json(const std::string& path, const EvalReport& report);

void write_bench_json(const std::string& path, const BenchReport& report);
BenchReport read_bench_json(const std::string& path);
std::string bench_to_csv(const BenchReport& report);
void write_bench_csv(const std::string& path, const BenchReport& report);

void write_comparison_json(const std::string& path, const ComparisonReport& report);
ComparisonReport read_comparison_json(const std::string& path);

// figure-analog CSVs: fig2a_accuracy.csv / fig2c_time.csv from a bench
// report, fig3a_offloading.csv / fig3b_migration.csv from a comparison
std::vector<std::string> write_fig2_csvs(const std::string& out_dir,
                                         const BenchReport& report);
std::vector<std::string> write_fig3_csvs(const std::string& out_dir,
                                         const ComparisonReport& report);

}  // namespace edgesim
