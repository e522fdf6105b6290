#pragma once

#include <string>
#include <vector>

#include "edgesim/trace.hpp"

namespace edgesim {

enum class FeatureKind { Numeric, Categorical };

struct FeatureSpec {
    std::string name;
    FeatureKind kind = FeatureKind::Numeric;
};

// One slot per feature; the schema says which member is live. Categorical
// values are codes into the schema's per-feature dictionary (-1 = unseen).
struct FeatureValue {
    double num = 0.0;
    int cat = -1;
};

struct Schema {
    std::vector<FeatureSpec> features;
    std::vector<double> num_min;  // per feature; meaningful for numeric slots
    std::vector<double> num_max;
    std::vector<std::vector<std::string>> cat_values;  // per-feature dictionary

    std::size_t size() const { return features.size(); }
    bool is_numeric(std::size_t f) const {
        return features[f].kind == FeatureKind::Numeric;
    }

    // min-max to [0,1]; a zero-range feature normalizes to 0
    double normalized(std::size_t f, double raw) const {
        const double range = num_max[f] - num_min[f];
        if (range <= 0.0) return 0.0;
        return (raw - num_min[f]) / range;
    }

    int code_of(std::size_t f, const std::string& value) const;  // -1 if unseen
    int intern(std::size_t f, const std::string& value);         // adds if missing
};

struct Dataset {
    Schema schema;
    std::vector<std::string> label_names;  // label id = index (first appearance)
    std::vector<std::vector<FeatureValue>> rows;  // raw feature values
    std::vector<int> labels;

    std::size_t size() const { return rows.size(); }
    int intern_label(const std::string& name);

    // recompute numeric min/max over a subset of rows (training split)
    Schema schema_with_stats(const std::vector<std::size_t>& row_idx) const;
};

struct EncodeOptions {
    bool include_ue_id = false;  // identity feature, off by default
};

// Fixed feature order: time_of_day_s, latitude, longitude, enodeb_id (cat),
// datarate_uplink, datarate_downlink, zone (cat) [, ue_id (cat)]. Idle rows
// (service "NONE") are dropped; an empty result is an error.
Dataset encode(const std::vector<TraceRecord>& records, const EncodeOptions& opts = {});

inline constexpr std::size_t kFeatureTimeOfDay = 0;
inline constexpr std::size_t kFeatureLatitude = 1;
inline constexpr std::size_t kFeatureLongitude = 2;
inline constexpr std::size_t kFeatureEnodebId = 3;
inline constexpr std::size_t kFeatureUplink = 4;
inline constexpr std::size_t kFeatureDownlink = 5;
inline constexpr std::size_t kFeatureZone = 6;

// Builds one raw feature row against an existing schema's dictionaries
// (unseen categorical values code to -1). ue_id is consumed only when the
// schema carries the optional ue_id feature.
std::vector<FeatureValue> encode_features(const Schema& schema, long long time_s,
                                          double lat, double lon, int enodeb_id,
                                          double uplink_kbps, double downlink_kbps,
                                          const std::string& zone, int ue_id);

}  // namespace edgesim
