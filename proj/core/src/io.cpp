#include "edgesim/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "edgesim/errors.hpp"
#include "edgesim/version.hpp"

namespace edgesim {

using njson = nlohmann::ordered_json;

// ---- primitives ---------------------------------------------------------

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed for " + path);
    return ss.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("rename failed for " + path + ": " + ec.message());
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x00000100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

std::string digest_file(const std::string& path) {
    return "fnv1a64:" + fnv1a64_hex(read_text(path));
}

std::string format_sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double round_sig6(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_sig6(v).c_str(), nullptr);
}

// ---- CSV helpers ---------------------------------------------------------

namespace {

std::vector<std::string> split_lines(const std::string& content) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= content.size()) {
        const std::size_t nl = content.find('\n', start);
        std::string line = (nl == std::string::npos)
                               ? content.substr(start)
                               : content.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();  // CRLF input
        lines.push_back(std::move(line));
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    // drop a trailing empty line produced by the final newline
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t c = line.find(',', start);
        if (c == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, c - start));
        start = c + 1;
    }
    return out;
}

long long parse_ll(const std::string& s, std::size_t line_no, const char* what) {
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw IoError("line " + std::to_string(line_no) + ": unparsable " +
                      std::string(what) + " '" + s + "'");
    }
    return v;
}

int parse_int(const std::string& s, std::size_t line_no, const char* what) {
    return static_cast<int>(parse_ll(s, line_no, what));
}

double parse_double(const std::string& s, std::size_t line_no, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw IoError("line " + std::to_string(line_no) + ": unparsable " +
                      std::string(what) + " '" + s + "'");
    }
    return v;
}

ServiceKind parse_service_or_throw(const std::string& s, std::size_t line_no) {
    const auto k = parse_service_name(s);
    if (!k) {
        throw IoError("line " + std::to_string(line_no) + ": unknown service '" +
                      s + "'");
    }
    return *k;
}

}  // namespace

// ---- trace CSV -------------------------------------------------------------

std::string trace_to_csv(const std::vector<TraceRecord>& records) {
    std::string out = kTraceCsvHeader;
    out += '\n';
    char buf[256];
    for (const TraceRecord& r : records) {
        const std::string& svc = r.service ? service_name(*r.service)
                                           : std::string("NONE");
        std::snprintf(buf, sizeof(buf), "%lld,%d,%s,%.6f,%.6f,%d,%d,%d,%s\n",
                      r.time_s, r.ue_id, svc.c_str(), r.lat, r.lon, r.enodeb_id,
                      r.datarate_uplink_kbps, r.datarate_downlink_kbps,
                      r.zone.c_str());
        out += buf;
    }
    return out;
}

std::vector<TraceRecord> trace_from_csv(const std::string& content) {
    const auto lines = split_lines(content);
    if (lines.empty() || lines[0] != kTraceCsvHeader) {
        throw IoError(std::string("trace CSV header mismatch; expected '") +
                      kTraceCsvHeader + "'");
    }
    std::vector<TraceRecord> records;
    records.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const auto f = split_fields(lines[i]);
        if (f.size() != 9) {
            throw IoError("line " + std::to_string(line_no) + ": expected 9 fields, got " +
                          std::to_string(f.size()));
        }
        TraceRecord r;
        r.time_s = parse_ll(f[0], line_no, "time");
        r.ue_id = parse_int(f[1], line_no, "ue_id");
        if (f[2] != "NONE") r.service = parse_service_or_throw(f[2], line_no);
        r.lat = parse_double(f[3], line_no, "latitude");
        r.lon = parse_double(f[4], line_no, "longitude");
        r.enodeb_id = parse_int(f[5], line_no, "enodeb_id");
        r.datarate_uplink_kbps = parse_int(f[6], line_no, "datarate_uplink");
        r.datarate_downlink_kbps = parse_int(f[7], line_no, "datarate_downlink");
        r.zone = f[8];
        records.push_back(std::move(r));
    }
    return records;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& records) {
    write_text_atomic(path, trace_to_csv(records));
}

std::vector<TraceRecord> read_trace_csv(const std::string& path) {
    return trace_from_csv(read_text(path));
}

// ---- sessions CSV ------------------------------------------------------------

std::string sessions_to_csv(const std::vector<ServiceSession>& sessions) {
    std::string out = kSessionsCsvHeader;
    out += '\n';
    char buf[160];
    for (const ServiceSession& s : sessions) {
        std::snprintf(buf, sizeof(buf), "%d,%s,%lld,%lld,%d,%d\n", s.ue_id,
                      service_name(s.service).c_str(), s.start_s, s.end_s,
                      s.uplink_kbps, s.downlink_kbps);
        out += buf;
    }
    return out;
}

std::vector<ServiceSession> sessions_from_csv(const std::string& content) {
    const auto lines = split_lines(content);
    if (lines.empty() || lines[0] != kSessionsCsvHeader) {
        throw IoError(std::string("sessions CSV header mismatch; expected '") +
                      kSessionsCsvHeader + "'");
    }
    std::vector<ServiceSession> sessions;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const auto f = split_fields(lines[i]);
        if (f.size() != 6) {
            throw IoError("line " + std::to_string(line_no) +
                          ": expected 6 fields, got " + std::to_string(f.size()));
        }
        ServiceSession s;
        s.ue_id = parse_int(f[0], line_no, "ue_id");
        s.service = parse_service_or_throw(f[1], line_no);
        s.start_s = parse_ll(f[2], line_no, "start");
        s.end_s = parse_ll(f[3], line_no, "end");
        s.uplink_kbps = parse_int(f[4], line_no, "uplink");
        s.downlink_kbps = parse_int(f[5], line_no, "downlink");
        sessions.push_back(s);
    }
    return sessions;
}

void write_sessions_csv(const std::string& path,
                        const std::vector<ServiceSession>& sessions) {
    write_text_atomic(path, sessions_to_csv(sessions));
}

std::vector<ServiceSession> read_sessions_csv(const std::string& path) {
    return sessions_from_csv(read_text(path));
}

// ---- JSON documents -----------------------------------------------------------

namespace {

njson parse_json_or_throw(const std::string& text, const std::string& what) {
    njson doc = njson::parse(text, nullptr, false);
    if (doc.is_discarded()) throw IoError("malformed JSON in " + what);
    return doc;
}

njson gps_to_json(const GpsPoint& p) { return njson{{"lat", p.lat}, {"lon", p.lon}}; }

GpsPoint gps_from_json(const njson& j) {
    return {j.at("lat").get<double>(), j.at("lon").get<double>()};
}

}  // namespace

void write_topology_json(const std::string& path, const Topology& topo) {
    njson doc;
    doc["format"] = "edgesim-topology";
    doc["enbs"] = njson::array();
    for (const Enb& e : topo.enbs) {
        doc["enbs"].push_back(njson{{"id", e.id},
                                    {"lat", e.pos.lat},
                                    {"lon", e.pos.lon},
                                    {"ec_id", e.ec_id},
                                    {"ta_id", e.ta_id}});
    }
    doc["ecs"] = njson::array();
    for (const EdgeCloudSite& ec : topo.ecs) {
        doc["ecs"].push_back(njson{{"id", ec.id},
                                   {"centroid", gps_to_json(ec.centroid)},
                                   {"enb_ids", ec.enb_ids}});
    }
    doc["drone_homes"] = njson::array();
    for (const GpsPoint& h : topo.drone_homes) doc["drone_homes"].push_back(gps_to_json(h));
    doc["iot_devices"] = njson::array();
    for (const IotDevice& d : topo.iot_devices) {
        doc["iot_devices"].push_back(njson{{"kind", iot_device_kind_name(d.kind)},
                                           {"lat", d.pos.lat},
                                           {"lon", d.pos.lon}});
    }
    write_text_atomic(path, doc.dump(2) + "\n");
}

Topology read_topology_json(const std::string& path) {
    const njson doc = parse_json_or_throw(read_text(path), path);
    Topology topo;
    for (const njson& e : doc.at("enbs")) {
        topo.enbs.push_back({e.at("id").get<int>(),
                             {e.at("lat").get<double>(), e.at("lon").get<double>()},
                             e.at("ec_id").get<int>(),
                             e.at("ta_id").get<int>()});
    }
    for (const njson& e : doc.at("ecs")) {
        EdgeCloudSite ec;
        ec.id = e.at("id").get<int>();
        ec.centroid = gps_from_json(e.at("centroid"));
        ec.enb_ids = e.at("enb_ids").get<std::vector<int>>();
        topo.ecs.push_back(std::move(ec));
    }
    for (const njson& h : doc.at("drone_homes")) topo.drone_homes.push_back(gps_from_json(h));
    for (const njson& d : doc.at("iot_devices")) {
        const std::string kind = d.at("kind").get<std::string>();
        IotDeviceKind k = IotDeviceKind::Weather;
        if (kind == "air_pollution") k = IotDeviceKind::AirPollution;
        else if (kind == "parking") k = IotDeviceKind::Parking;
        else if (kind != "weather") throw IoError("unknown iot device kind " + kind);
        topo.iot_devices.push_back({k, {d.at("lat").get<double>(), d.at("lon").get<double>()}});
    }
    return topo;
}

namespace {

njson zones_to_json(const ZoneModel& zones) {
    njson doc;
    doc["format"] = "edgesim-zones";
    doc["eps_km"] = zones.eps_km;
    doc["zones"] = njson::array();
    for (const DenseZone& z : zones.zones) {
        doc["zones"].push_back(njson{{"zone_id", z.zone_id},
                                     {"centroid", gps_to_json(z.centroid)},
                                     {"member_count", z.member_count},
                                     {"radius_km", z.radius_km}});
    }
    return doc;
}

ZoneModel zones_from_json(const njson& doc) {
    ZoneModel model;
    model.eps_km = doc.at("eps_km").get<double>();
    for (const njson& z : doc.at("zones")) {
        model.zones.push_back({z.at("zone_id").get<int>(),
                               gps_from_json(z.at("centroid")),
                               z.at("member_count").get<int>(),
                               z.at("radius_km").get<double>()});
    }
    return model;
}

njson model_to_json(const Model& m) {
    njson doc;
    doc["format"] = "edgesim-model";
    doc["version"] = kVersion;
    doc["algorithm"] = algorithm_name(m.algorithm);
    doc["labels"] = m.label_names;
    doc["hyperparams"] = njson{{"knn_k", m.hyperparams.knn_k},
                               {"nb_alpha", m.hyperparams.nb_alpha},
                               {"nb_var_floor", m.hyperparams.nb_var_floor},
                               {"tree_max_depth", m.hyperparams.tree_max_depth},
                               {"tree_min_leaf", m.hyperparams.tree_min_leaf}};
    njson schema;
    schema["features"] = njson::array();
    for (const FeatureSpec& f : m.schema.features) {
        schema["features"].push_back(njson{
            {"name", f.name},
            {"kind", f.kind == FeatureKind::Numeric ? "numeric" : "categorical"}});
    }
    schema["num_min"] = m.schema.num_min;
    schema["num_max"] = m.schema.num_max;
    schema["cat_values"] = m.schema.cat_values;
    doc["schema"] = std::move(schema);

    njson state;
    switch (m.algorithm) {
        case Algorithm::ZeroR:
            state["majority_label"] = m.zeror.majority_label;
            break;
        case Algorithm::NaiveBayes:
            state["alpha"] = m.nb.alpha;
            state["var_floor"] = m.nb.var_floor;
            state["class_counts"] = m.nb.class_counts;
            state["mean"] = m.nb.mean;
            state["var"] = m.nb.var;
            state["cat_counts"] = m.nb.cat_counts;
            break;
        case Algorithm::Knn: {
            state["k"] = m.knn.k;
            state["labels"] = m.knn.labels;
            njson rows = njson::array();
            for (const auto& row : m.knn.rows) {
                njson jrow = njson::array();
                for (std::size_t f = 0; f < row.size(); ++f) {
                    if (m.schema.is_numeric(f)) jrow.push_back(row[f].num);
                    else jrow.push_back(row[f].cat);
                }
                rows.push_back(std::move(jrow));
            }
            state["rows"] = std::move(rows);
            break;
        }
        case Algorithm::DecisionTree: {
            njson nodes = njson::array();
            for (const TreeNode& n : m.tree.nodes) {
                nodes.push_back(njson{{"leaf", n.leaf},
                                      {"majority", n.majority},
                                      {"distribution", n.distribution},
                                      {"feature", n.feature},
                                      {"threshold", n.threshold},
                                      {"children", n.children}});
            }
            state["nodes"] = std::move(nodes);
            break;
        }
    }
    doc["state"] = std::move(state);
    return doc;
}

Model model_from_json(const njson& doc) {
    Model m;
    const std::string alg = doc.at("algorithm").get<std::string>();
    const auto parsed = parse_algorithm(alg);
    if (!parsed) throw IoError("unknown algorithm '" + alg + "' in model file");
    m.algorithm = *parsed;
    m.label_names = doc.at("labels").get<std::vector<std::string>>();
    const njson& hp = doc.at("hyperparams");
    m.hyperparams.knn_k = hp.at("knn_k").get<int>();
    m.hyperparams.nb_alpha = hp.at("nb_alpha").get<double>();
    m.hyperparams.nb_var_floor = hp.at("nb_var_floor").get<double>();
    m.hyperparams.tree_max_depth = hp.at("tree_max_depth").get<int>();
    m.hyperparams.tree_min_leaf = hp.at("tree_min_leaf").get<int>();

    const njson& schema = doc.at("schema");
    for (const njson& f : schema.at("features")) {
        m.schema.features.push_back(
            {f.at("name").get<std::string>(),
             f.at("kind").get<std::string>() == "numeric" ? FeatureKind::Numeric
                                                          : FeatureKind::Categorical});
    }
    m.schema.num_min = schema.at("num_min").get<std::vector<double>>();
    m.schema.num_max = schema.at("num_max").get<std::vector<double>>();
    m.schema.cat_values =
        schema.at("cat_values").get<std::vector<std::vector<std::string>>>();

    const njson& state = doc.at("state");
    switch (m.algorithm) {
        case Algorithm::ZeroR:
            m.zeror.majority_label = state.at("majority_label").get<int>();
            break;
        case Algorithm::NaiveBayes:
            m.nb.alpha = state.at("alpha").get<double>();
            m.nb.var_floor = state.at("var_floor").get<double>();
            m.nb.class_counts = state.at("class_counts").get<std::vector<double>>();
            m.nb.mean = state.at("mean").get<std::vector<std::vector<double>>>();
            m.nb.var = state.at("var").get<std::vector<std::vector<double>>>();
            m.nb.cat_counts =
                state.at("cat_counts")
                    .get<std::vector<std::vector<std::vector<double>>>>();
            break;
        case Algorithm::Knn: {
            m.knn.k = state.at("k").get<int>();
            m.knn.labels = state.at("labels").get<std::vector<int>>();
            for (const njson& jrow : state.at("rows")) {
                std::vector<FeatureValue> row(jrow.size());
                for (std::size_t f = 0; f < jrow.size(); ++f) {
                    if (m.schema.is_numeric(f)) row[f].num = jrow[f].get<double>();
                    else row[f].cat = jrow[f].get<int>();
                }
                m.knn.rows.push_back(std::move(row));
            }
            break;
        }
        case Algorithm::DecisionTree:
            for (const njson& jn : state.at("nodes")) {
                TreeNode n;
                n.leaf = jn.at("leaf").get<bool>();
                n.majority = jn.at("majority").get<int>();
                n.distribution = jn.at("distribution").get<std::vector<double>>();
                n.feature = jn.at("feature").get<int>();
                n.threshold = jn.at("threshold").get<double>();
                n.children = jn.at("children").get<std::vector<int>>();
                m.tree.nodes.push_back(std::move(n));
            }
            break;
    }
    return m;
}

}  // namespace

void write_zones_json(const std::string& path, const ZoneModel& zones) {
    write_text_atomic(path, zones_to_json(zones).dump(2) + "\n");
}

ZoneModel read_zones_json(const std::string& path) {
    return zones_from_json(parse_json_or_throw(read_text(path), path));
}

void write_model_json(const std::string& path, const Model& model) {
    write_text_atomic(path, model_to_json(model).dump(2) + "\n");
}

Model read_model_json(const std::string& path) {
    return model_from_json(parse_json_or_throw(read_text(path), path));
}

void write_predictor_json(const std::string& path, const DeployedPredictor& pred) {
    njson doc;
    doc["format"] = "edgesim-predictor";
    doc["version"] = kVersion;
    doc["zones"] = zones_to_json(pred.zones);
    doc["model"] = model_to_json(pred.model);
    doc["prewarm_ttl_s"] = pred.prewarm_ttl_s;
    doc["share_cap"] = pred.share_cap;
    doc["dbscan"] = njson{{"eps_km", pred.dbscan.eps_km}, {"min_pts", pred.dbscan.min_pts}};
    doc["snapshot_s"] = pred.snapshot_s;
    doc["seed"] = pred.seed;
    write_text_atomic(path, doc.dump(2) + "\n");
}

DeployedPredictor read_predictor_json(const std::string& path) {
    const njson doc = parse_json_or_throw(read_text(path), path);
    DeployedPredictor pred;
    pred.zones = zones_from_json(doc.at("zones"));
    pred.model = model_from_json(doc.at("model"));
    pred.prewarm_ttl_s = doc.at("prewarm_ttl_s").get<long long>();
    pred.share_cap = doc.at("share_cap").get<int>();
    pred.dbscan.eps_km = doc.at("dbscan").at("eps_km").get<double>();
    pred.dbscan.min_pts = doc.at("dbscan").at("min_pts").get<int>();
    pred.snapshot_s = doc.at("snapshot_s").get<long long>();
    pred.seed = doc.at("seed").get<std::uint64_t>();
    return pred;
}

// ---- configuration ---------------------------------------------------------

namespace {

njson parse_config_doc(const std::string& text) {
    // an empty document means "all defaults"
    bool blank = true;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            blank = false;
            break;
        }
    }
    if (blank) return njson::object();
    njson doc = njson::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ValidationError("config is not valid JSON");
    if (!doc.is_object()) throw ValidationError("config root must be a JSON object");
    return doc;
}

void reject_unknown_keys(const njson& obj, const std::vector<std::string>& known,
                         const std::string& scope) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const std::string& k : known) {
            if (k == key) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ValidationError("unknown config key '" + scope + key + "'");
    }
}

ResourceTriple resources_from_json(const njson& j, const std::string& scope) {
    reject_unknown_keys(j, {"ram_gb", "cores", "storage_gb"}, scope);
    ResourceTriple r;
    r.ram_gb = j.value("ram_gb", 0.0);
    r.cores = j.value("cores", 0.0);
    r.storage_gb = j.value("storage_gb", 0.0);
    return r;
}

}  // namespace

SimConfig parse_sim_config_text(const std::string& text) {
    const njson doc = parse_config_doc(text);
    reject_unknown_keys(
        doc,
        {"num_ues", "update_meters", "enbs_per_ec", "enbs_per_ta", "num_ecs",
         "num_drone_homes", "drones_per_home", "range_m", "iot_device_counts",
         "service_probabilities", "sim_duration_s", "seed", "origin", "p_arrival",
         "session_profiles"},
        "");

    SimConfig cfg;
    cfg.num_ues = doc.value("num_ues", cfg.num_ues);
    cfg.update_meters = doc.value("update_meters", cfg.update_meters);
    cfg.enbs_per_ec = doc.value("enbs_per_ec", cfg.enbs_per_ec);
    cfg.enbs_per_ta = doc.value("enbs_per_ta", cfg.enbs_per_ta);
    cfg.num_ecs = doc.value("num_ecs", cfg.num_ecs);
    cfg.num_drone_homes = doc.value("num_drone_homes", cfg.num_drone_homes);
    cfg.drones_per_home = doc.value("drones_per_home", cfg.drones_per_home);
    cfg.range_m = doc.value("range_m", cfg.range_m);
    cfg.sim_duration_s = doc.value("sim_duration_s", cfg.sim_duration_s);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.p_arrival = doc.value("p_arrival", cfg.p_arrival);

    if (doc.contains("iot_device_counts")) {
        const njson& j = doc["iot_device_counts"];
        reject_unknown_keys(j, {"weather", "air_pollution", "parking"},
                            "iot_device_counts.");
        cfg.iot_device_counts.weather = j.value("weather", cfg.iot_device_counts.weather);
        cfg.iot_device_counts.air_pollution =
            j.value("air_pollution", cfg.iot_device_counts.air_pollution);
        cfg.iot_device_counts.parking = j.value("parking", cfg.iot_device_counts.parking);
    }
    if (doc.contains("service_probabilities")) {
        const njson& j = doc["service_probabilities"];
        reject_unknown_keys(j,
                            {"mime", "video_streaming", "social_network",
                             "drone_delivery", "drone_transportation", "iot"},
                            "service_probabilities.");
        ServiceMix& m = cfg.service_probabilities;
        m.mime = j.value("mime", m.mime);
        m.video_streaming = j.value("video_streaming", m.video_streaming);
        m.social_network = j.value("social_network", m.social_network);
        m.drone_delivery = j.value("drone_delivery", m.drone_delivery);
        m.drone_transportation = j.value("drone_transportation", m.drone_transportation);
        m.iot = j.value("iot", m.iot);
    }
    if (doc.contains("origin")) {
        const njson& j = doc["origin"];
        reject_unknown_keys(j, {"lat", "lon"}, "origin.");
        cfg.origin.lat = j.value("lat", cfg.origin.lat);
        cfg.origin.lon = j.value("lon", cfg.origin.lon);
    }
    if (doc.contains("session_profiles")) {
        const njson& j = doc["session_profiles"];
        std::vector<std::string> known;
        for (ServiceKind k : kAllServiceKinds) known.push_back(service_name(k));
        reject_unknown_keys(j, known, "session_profiles.");
        for (ServiceKind k : kAllServiceKinds) {
            const std::string& name = service_name(k);
            if (!j.contains(name)) continue;
            const njson& p = j[name];
            reject_unknown_keys(p, {"mean_duration_s", "uplink_kbps", "downlink_kbps"},
                                "session_profiles." + name + ".");
            SessionProfile& sp = cfg.session_profiles[static_cast<std::size_t>(k)];
            sp.mean_duration_s = p.value("mean_duration_s", sp.mean_duration_s);
            sp.uplink_kbps = p.value("uplink_kbps", sp.uplink_kbps);
            sp.downlink_kbps = p.value("downlink_kbps", sp.downlink_kbps);
        }
    }
    cfg.validate();
    return cfg;
}

MecConfig parse_mec_config_text(const std::string& text) {
    const njson doc = parse_config_doc(text);
    reject_unknown_keys(doc,
                        {"bandwidth_gbps", "policy", "vms_per_ec", "host_resources",
                         "vm_resources", "app_resources"},
                        "");
    MecConfig cfg;
    cfg.bandwidth_gbps = doc.value("bandwidth_gbps", cfg.bandwidth_gbps);
    cfg.vms_per_ec = doc.value("vms_per_ec", cfg.vms_per_ec);
    if (doc.contains("policy")) {
        const std::string p = doc["policy"].get<std::string>();
        if (p == "FirstFit") cfg.policy = PlacementPolicy::FirstFit;
        else if (p == "BestFit") cfg.policy = PlacementPolicy::BestFit;
        else if (p == "Random") cfg.policy = PlacementPolicy::Random;
        else throw ValidationError("unknown policy '" + p + "'");
    }
    if (doc.contains("host_resources")) {
        cfg.host_resources = resources_from_json(doc["host_resources"], "host_resources.");
    }
    if (doc.contains("vm_resources")) {
        cfg.vm_resources = resources_from_json(doc["vm_resources"], "vm_resources.");
    }
    if (doc.contains("app_resources")) {
        cfg.app_resources = resources_from_json(doc["app_resources"], "app_resources.");
    }
    cfg.validate();
    return cfg;
}

SimConfig read_sim_config(const std::string& path) {
    return parse_sim_config_text(read_text(path));
}

MecConfig read_mec_config(const std::string& path) {
    return parse_mec_config_text(read_text(path));
}

std::string sim_config_to_json_text(const SimConfig& cfg) {
    njson doc;
    doc["num_ues"] = cfg.num_ues;
    doc["update_meters"] = cfg.update_meters;
    doc["enbs_per_ec"] = cfg.enbs_per_ec;
    doc["enbs_per_ta"] = cfg.enbs_per_ta;
    doc["num_ecs"] = cfg.num_ecs;
    doc["num_drone_homes"] = cfg.num_drone_homes;
    doc["drones_per_home"] = cfg.drones_per_home;
    doc["range_m"] = cfg.range_m;
    doc["iot_device_counts"] = njson{{"weather", cfg.iot_device_counts.weather},
                                     {"air_pollution", cfg.iot_device_counts.air_pollution},
                                     {"parking", cfg.iot_device_counts.parking}};
    const ServiceMix& m = cfg.service_probabilities;
    doc["service_probabilities"] =
        njson{{"mime", m.mime},
              {"video_streaming", m.video_streaming},
              {"social_network", m.social_network},
              {"drone_delivery", m.drone_delivery},
              {"drone_transportation", m.drone_transportation},
              {"iot", m.iot}};
    doc["sim_duration_s"] = cfg.sim_duration_s;
    doc["seed"] = cfg.seed;
    doc["origin"] = gps_to_json(cfg.origin);
    doc["p_arrival"] = cfg.p_arrival;
    njson profiles;
    for (ServiceKind k : kAllServiceKinds) {
        const SessionProfile& p = cfg.profile(k);
        profiles[service_name(k)] = njson{{"mean_duration_s", p.mean_duration_s},
                                          {"uplink_kbps", p.uplink_kbps},
                                          {"downlink_kbps", p.downlink_kbps}};
    }
    doc["session_profiles"] = std::move(profiles);
    return doc.dump(2) + "\n";
}

std::string mec_config_to_json_text(const MecConfig& cfg) {
    auto res = [](const ResourceTriple& r) {
        return njson{{"ram_gb", r.ram_gb}, {"cores", r.cores}, {"storage_gb", r.storage_gb}};
    };
    njson doc;
    doc["bandwidth_gbps"] = cfg.bandwidth_gbps;
    doc["policy"] = placement_policy_name(cfg.policy);
    doc["vms_per_ec"] = cfg.vms_per_ec;
    doc["host_resources"] = res(cfg.host_resources);
    doc["vm_resources"] = res(cfg.vm_resources);
    doc["app_resources"] = res(cfg.app_resources);
    return doc.dump(2) + "\n";
}

// ---- MEC outputs ---------------------------------------------------------

namespace {

std::string format_time(double t) {
    if (std::floor(t) == t && std::abs(t) < 9.0e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(t));
        return buf;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", t);
    return buf;
}

}  // namespace

std::string events_to_jsonl(const std::vector<MecEvent>& events) {
    std::string out;
    out.reserve(events.size() * 96);
    for (const MecEvent& ev : events) {
        out += "{\"t\":";
        out += format_time(ev.t);
        out += ",\"kind\":\"";
        out += mec_event_kind_name(ev.kind);
        out += "\",\"ue\":";
        out += std::to_string(ev.ue_id);
        out += ",\"service\":\"";
        out += service_name(ev.service);
        out += "\",\"ec\":";
        out += std::to_string(ev.ec_id);
        if (ev.target_ec >= 0) {
            out += ",\"target_ec\":";
            out += std::to_string(ev.target_ec);
        }
        if (!ev.cause.empty()) {
            out += ",\"cause\":\"";
            out += ev.cause;
            out += "\"";
        }
        out += "}\n";
    }
    return out;
}

void write_events_jsonl(const std::string& path, const std::vector<MecEvent>& events) {
    write_text_atomic(path, events_to_jsonl(events));
}

void write_mec_summary_json(const std::string& path, const MecRunSummary& summary) {
    njson doc;
    njson counts;
    for (std::size_t k = 0; k < kMecEventKindCount; ++k) {
        counts[mec_event_kind_name(static_cast<MecEventKind>(k))] = summary.counts[k];
    }
    doc["counts"] = std::move(counts);
    doc["ongoing_migrations"] = summary.ongoing_migrations;
    doc["offloading_success_rate"] = round_sig6(summary.offloading_success_rate());
    write_text_atomic(path, doc.dump(2) + "\n");
}

// ---- reports ----------------------------------------------------------------

void write_eval_report_json(const std::string& path, const EvalReport& report) {
    njson doc;
    doc["accuracy"] = round_sig6(report.accuracy);
    doc["labels"] = report.label_names;
    njson precision = njson::array(), recall = njson::array();
    for (double p : report.precision) precision.push_back(round_sig6(p));
    for (double r : report.recall) recall.push_back(round_sig6(r));
    doc["precision"] = std::move(precision);
    doc["recall"] = std::move(recall);
    doc["confusion"] = report.confusion;
    njson folds = njson::array();
    for (double f : report.fold_accuracies) folds.push_back(round_sig6(f));
    doc["fold_accuracies"] = std::move(folds);
    doc["train_wall_s"] = round_sig6(report.train_wall_s);
    doc["test_wall_s"] = round_sig6(report.test_wall_s);
    write_text_atomic(path, doc.dump(2) + "\n");
}

void write_bench_json(const std::string& path, const BenchReport& report) {
    njson doc;
    doc["repetitions"] = report.repetitions;
    doc["folds"] = report.k_folds;
    doc["entries"] = njson::array();
    for (const BenchEntry& e : report.entries) {
        njson accs = njson::array();
        for (double a : e.accuracies) accs.push_back(round_sig6(a));
        doc["entries"].push_back(njson{{"algorithm", algorithm_name(e.algorithm)},
                                       {"mean_accuracy", round_sig6(e.mean_accuracy)},
                                       {"ci95_accuracy", round_sig6(e.ci95_accuracy)},
                                       {"mean_train_s", round_sig6(e.mean_train_s)},
                                       {"mean_test_s", round_sig6(e.mean_test_s)},
                                       {"ci95_time", round_sig6(e.ci95_time)},
                                       {"accuracies", std::move(accs)}});
    }
    write_text_atomic(path, doc.dump(2) + "\n");
}

BenchReport read_bench_json(const std::string& path) {
    const njson doc = parse_json_or_throw(read_text(path), path);
    BenchReport report;
    report.repetitions = doc.at("repetitions").get<int>();
    report.k_folds = doc.at("folds").get<int>();
    for (const njson& je : doc.at("entries")) {
        BenchEntry e;
        const auto alg = parse_algorithm(je.at("algorithm").get<std::string>());
        if (!alg) throw IoError("unknown algorithm in bench report");
        e.algorithm = *alg;
        e.mean_accuracy = je.at("mean_accuracy").get<double>();
        e.ci95_accuracy = je.at("ci95_accuracy").get<double>();
        e.mean_train_s = je.at("mean_train_s").get<double>();
        e.mean_test_s = je.at("mean_test_s").get<double>();
        e.ci95_time = je.at("ci95_time").get<double>();
        e.accuracies = je.at("accuracies").get<std::vector<double>>();
        report.entries.push_back(std::move(e));
    }
    return report;
}

std::string bench_to_csv(const BenchReport& report) {
    std::string out = "algorithm,mean_accuracy,ci95_accuracy,mean_train_s,mean_test_s,ci95_time\n";
    for (const BenchEntry& e : report.entries) {
        out += algorithm_name(e.algorithm);
        out += ',' + format_sig6(e.mean_accuracy);
        out += ',' + format_sig6(e.ci95_accuracy);
        out += ',' + format_sig6(e.mean_train_s);
        out += ',' + format_sig6(e.mean_test_s);
        out += ',' + format_sig6(e.ci95_time);
        out += '\n';
    }
    return out;
}

void write_bench_csv(const std::string& path, const BenchReport& report) {
    write_text_atomic(path, bench_to_csv(report));
}

namespace {

njson stat_to_json(const RunStat& s) {
    njson per_run = njson::array();
    for (double v : s.per_run) per_run.push_back(round_sig6(v));
    return njson{{"mean", round_sig6(s.mean)},
                 {"ci95", round_sig6(s.ci95)},
                 {"per_run", std::move(per_run)}};
}

RunStat stat_from_json(const njson& j) {
    RunStat s;
    s.mean = j.at("mean").get<double>();
    s.ci95 = j.at("ci95").get<double>();
    s.per_run = j.at("per_run").get<std::vector<double>>();
    return s;
}

njson scenario_to_json(const ScenarioAggregate& a) {
    njson offloading;
    offloading["request"] = stat_to_json(a.offloading_request);
    offloading["success"] = stat_to_json(a.offloading_success);
    offloading["failure"] = stat_to_json(a.offloading_failure);
    njson migration;
    migration["triggered"] = stat_to_json(a.migration_triggered);
    migration["success"] = stat_to_json(a.migration_success);
    migration["failure"] = stat_to_json(a.migration_failure);
    migration["aborted"] = stat_to_json(a.migration_aborted);
    migration["ongoing"] = stat_to_json(a.migration_ongoing);
    njson out;
    out["offloading"] = std::move(offloading);
    out["migration"] = std::move(migration);
    out["success_rate"] = stat_to_json(a.success_rate);
    return out;
}

ScenarioAggregate scenario_from_json(const njson& j) {
    ScenarioAggregate a;
    a.offloading_request = stat_from_json(j.at("offloading").at("request"));
    a.offloading_success = stat_from_json(j.at("offloading").at("success"));
    a.offloading_failure = stat_from_json(j.at("offloading").at("failure"));
    a.migration_triggered = stat_from_json(j.at("migration").at("triggered"));
    a.migration_success = stat_from_json(j.at("migration").at("success"));
    a.migration_failure = stat_from_json(j.at("migration").at("failure"));
    a.migration_aborted = stat_from_json(j.at("migration").at("aborted"));
    a.migration_ongoing = stat_from_json(j.at("migration").at("ongoing"));
    a.success_rate = stat_from_json(j.at("success_rate"));
    return a;
}

}  // namespace

void write_comparison_json(const std::string& path, const ComparisonReport& report) {
    njson doc;
    doc["runs"] = report.runs;
    doc["mobility_seed"] = report.mobility_seed;
    doc["baseline"] = scenario_to_json(report.baseline);
    doc["predicted"] = scenario_to_json(report.predicted);
    njson delta;
    delta["success_rate_pp"] = round_sig6(report.delta_success_rate_pp);
    if (report.migration_success_ratio) {
        delta["migration_success_ratio"] = round_sig6(*report.migration_success_ratio);
    } else {
        delta["migration_success_ratio"] = nullptr;
    }
    doc["delta"] = std::move(delta);
    write_text_atomic(path, doc.dump(2) + "\n");
}

ComparisonReport read_comparison_json(const std::string& path) {
    const njson doc = parse_json_or_throw(read_text(path), path);
    ComparisonReport report;
    report.runs = doc.at("runs").get<int>();
    report.mobility_seed = doc.at("mobility_seed").get<std::uint64_t>();
    report.baseline = scenario_from_json(doc.at("baseline"));
    report.predicted = scenario_from_json(doc.at("predicted"));
    report.delta_success_rate_pp = doc.at("delta").at("success_rate_pp").get<double>();
    const njson& ratio = doc.at("delta").at("migration_success_ratio");
    if (!ratio.is_null()) report.migration_success_ratio = ratio.get<double>();
    return report;
}

std::vector<std::string> write_fig2_csvs(const std::string& out_dir,
                                         const BenchReport& report) {
    namespace fs = std::filesystem;
    const std::string acc_path = (fs::path(out_dir) / "fig2a_accuracy.csv").string();
    const std::string time_path = (fs::path(out_dir) / "fig2c_time.csv").string();

    std::string acc = "algorithm,mean_accuracy,ci95\n";
    std::string time = "algorithm,mean_train_s,mean_test_s,ci95_time\n";
    for (const BenchEntry& e : report.entries) {
        acc += algorithm_name(e.algorithm) + ',' + format_sig6(e.mean_accuracy) +
               ',' + format_sig6(e.ci95_accuracy) + '\n';
        time += algorithm_name(e.algorithm) + ',' + format_sig6(e.mean_train_s) +
                ',' + format_sig6(e.mean_test_s) + ',' + format_sig6(e.ci95_time) +
                '\n';
    }
    write_text_atomic(acc_path, acc);
    write_text_atomic(time_path, time);
    return {acc_path, time_path};
}

std::vector<std::string> write_fig3_csvs(const std::string& out_dir,
                                         const ComparisonReport& report) {
    namespace fs = std::filesystem;
    const std::string off_path = (fs::path(out_dir) / "fig3a_offloading.csv").string();
    const std::string mig_path = (fs::path(out_dir) / "fig3b_migration.csv").string();

    auto row = [](const std::string& scenario, const std::string& event,
                  const RunStat& s) {
        return scenario + ',' + event + ',' + format_sig6(s.mean) + ',' +
               format_sig6(s.ci95) + '\n';
    };
    std::string off = "scenario,event,mean,ci95\n";
    std::string mig = "scenario,event,mean,ci95\n";
    const std::pair<std::string, const ScenarioAggregate*> scenarios[] = {
        {"baseline", &report.baseline}, {"predicted", &report.predicted}};
    for (const auto& [name, agg] : scenarios) {
        off += row(name, "request", agg->offloading_request);
        off += row(name, "success", agg->offloading_success);
        off += row(name, "failure", agg->offloading_failure);
        mig += row(name, "triggered", agg->migration_triggered);
        mig += row(name, "success", agg->migration_success);
        mig += row(name, "failure", agg->migration_failure);
        mig += row(name, "aborted", agg->migration_aborted);
        mig += row(name, "ongoing", agg->migration_ongoing);
    }
    write_text_atomic(off_path, off);
    write_text_atomic(mig_path, mig);
    return {off_path, mig_path};
}

}  // namespace edgesim
